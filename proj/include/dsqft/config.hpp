#ifndef DSQFT_CONFIG_HPP
#define DSQFT_CONFIG_HPP

// Run configuration: a single JSON document, validated field by field.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dsqft/errors.hpp"

namespace dsqft {

inline constexpr const char* version = "0.1.0";

/// Invalid configuration; the CLI maps it to exit code 2.
class config_error : public domain_error {
public:
    config_error(const std::string& field, const std::string& what)
        : domain_error("config field '" + field + "': " + what), field_(field)
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class Precision { double_precision, extended };

inline const std::vector<std::string>& suite_names()
{
    // Dependency order; reports are always emitted in this order.
    static const std::vector<std::string> names = {"omega", "kernel",     "rep",      "modular", "fsl",
                                                   "micro", "additivity", "standard", "sobolev", "fock"};
    return names;
}

struct SuiteConfig {
    double zeta = 1.0;
    double radius = 1.0;
    int K = 64;
    int M = 2;
    int N_max = 4;
    double window = 6.0;
    std::map<std::string, double> tolerances; // "<suite>" or "<suite>.<check>" -> threshold override
    std::vector<std::string> suites = suite_names();
    std::string output_dir = "dsqft-out";
    Precision precision = Precision::double_precision;
    int workers = 1;
    std::vector<double> polynomial = {0.0, 0.0, 0.0, 0.0, 1.0};

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["zeta"] = zeta;
        j["radius"] = radius;
        j["K"] = K;
        j["M"] = M;
        j["N_max"] = N_max;
        j["window"] = window;
        j["tolerances"] = tolerances;
        j["suites"] = suites;
        j["output_dir"] = output_dir;
        j["precision"] = precision == Precision::extended ? "extended" : "double";
        j["workers"] = workers;
        j["polynomial"] = polynomial;
        return j;
    }

    /// Fields that determine the results; output location and worker count are excluded.
    nlohmann::json hashed_json() const
    {
        nlohmann::json j = to_json();
        j.erase("output_dir");
        j.erase("workers");
        return j;
    }

    /// Threshold for a check, honouring overrides. A bare suite key applies to upper bounds only.
    double threshold(const std::string& suite, const std::string& check, double fallback, bool upper = true) const
    {
        if (const auto it = tolerances.find(suite + "." + check); it != tolerances.end()) {
            return it->second;
        }
        if (const auto it = tolerances.find(suite); upper && it != tolerances.end()) {
            return it->second;
        }
        return fallback;
    }
};

namespace detail {

template <class T>
T read_field(const nlohmann::json& j, const char* name, T fallback)
{
    if (!j.contains(name)) {
        return fallback;
    }
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw config_error(name, "has the wrong type");
    }
}

inline int read_int(const nlohmann::json& j, const char* name, int fallback)
{
    if (!j.contains(name)) {
        return fallback;
    }
    const auto& v = j.at(name);
    if (!v.is_number_integer()) {
        throw config_error(name, "must be an integer");
    }
    return v.get<int>();
}

inline double read_number(const nlohmann::json& j, const char* name, double fallback)
{
    if (!j.contains(name)) {
        return fallback;
    }
    const auto& v = j.at(name);
    if (!v.is_number()) {
        throw config_error(name, "must be a number");
    }
    return v.get<double>();
}

} // namespace detail

inline void validate(const SuiteConfig& c)
{
    if (!(c.zeta > 0.0) || !std::isfinite(c.zeta)) {
        throw config_error("zeta", "must be > 0");
    }
    if (!(c.radius > 0.0) || !std::isfinite(c.radius)) {
        throw config_error("radius", "must be > 0");
    }
    if (c.K < 8 || c.K > 2048) {
        throw config_error("K", "must lie in [8, 2048]");
    }
    if (c.M < 0 || c.M > c.K) {
        throw config_error("M", "must satisfy 0 <= M <= K");
    }
    if (c.N_max < 0 || c.N_max > 64) {
        throw config_error("N_max", "must lie in [0, 64]");
    }
    if (!(c.window > 0.0) || !std::isfinite(c.window)) {
        throw config_error("window", "must be > 0");
    }
    for (const auto& [key, value] : c.tolerances) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw config_error("tolerances." + key, "thresholds must be positive");
        }
        const auto dot = key.find('.');
        const std::string suite = key.substr(0, dot);
        if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end() ||
            (dot != std::string::npos && dot + 1 == key.size())) {
            throw config_error("tolerances." + key, "key must be <suite> or <suite>.<check>");
        }
    }
    for (const auto& s : c.suites) {
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
            throw config_error("suites", "unknown suite '" + s + "'");
        }
    }
    if (c.workers < 1 || c.workers > 64) {
        throw config_error("workers", "must lie in [1, 64]");
    }
    if (c.output_dir.empty()) {
        throw config_error("output_dir", "must not be empty");
    }
}

inline Precision parse_precision(const std::string& s, const char* field)
{
    if (s == "double") {
        return Precision::double_precision;
    }
    if (s == "extended") {
        return Precision::extended;
    }
    throw config_error(field, "must be 'double' or 'extended'");
}

inline SuiteConfig parse_config(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw config_error("<root>", "config must be a JSON object");
    }
    static const std::vector<std::string> known = {"zeta",    "radius",     "K",         "M",
                                                   "N_max",   "window",     "tolerances", "suites",
                                                   "output_dir", "precision", "workers",  "polynomial"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw config_error(key, "unknown field");
        }
    }
    SuiteConfig c;
    c.zeta = detail::read_number(j, "zeta", c.zeta);
    c.radius = detail::read_number(j, "radius", c.radius);
    c.K = detail::read_int(j, "K", c.K);
    c.M = detail::read_int(j, "M", c.M);
    c.N_max = detail::read_int(j, "N_max", c.N_max);
    c.window = detail::read_number(j, "window", c.window);
    c.workers = detail::read_int(j, "workers", c.workers);
    c.output_dir = detail::read_field<std::string>(j, "output_dir", c.output_dir);
    c.suites = detail::read_field<std::vector<std::string>>(j, "suites", c.suites);
    c.tolerances = detail::read_field<std::map<std::string, double>>(j, "tolerances", c.tolerances);
    c.polynomial = detail::read_field<std::vector<double>>(j, "polynomial", c.polynomial);
    if (j.contains("precision")) {
        c.precision = parse_precision(detail::read_field<std::string>(j, "precision", "double"), "precision");
    }
    validate(c);
    return c;
}

inline SuiteConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw config_error("--config", "cannot open '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("--config", std::string("JSON parse error: ") + e.what());
    }
    return parse_config(j);
}

/// FNV-1a 64 over the canonical (key-sorted, compact) serialization of the hashed fields.
inline std::uint64_t config_hash(const SuiteConfig& c)
{
    const std::string s = c.hashed_json().dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Deterministic uniform numbers in [0, 1) from mt19937_64, identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal()
    {
        // Box-Muller on two uniforms.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace dsqft

#endif
