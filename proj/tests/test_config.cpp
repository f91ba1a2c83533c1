#include <catch_amalgamated.hpp>

#include "dsqft/config.hpp"

using namespace dsqft;
using nlohmann::json;

TEST_CASE("defaults and parsing", "[config]")
{
    const SuiteConfig c = parse_config(json::object());
    REQUIRE(c.zeta == 1.0);
    REQUIRE(c.K == 64);
    REQUIRE(c.suites == suite_names());
    const SuiteConfig d = parse_config(json::parse(R"({"zeta": 0.3, "K": 32, "suites": ["fsl", "omega"],
        "tolerances": {"omega": 1e-9, "fsl.wedge_leakage": 1e-7}, "precision": "extended"})"));
    REQUIRE(d.zeta == 0.3);
    REQUIRE(d.precision == Precision::extended);
    REQUIRE(d.threshold("fsl", "wedge_leakage", 1.0) == 1e-7);
    REQUIRE(d.threshold("omega", "asymptote", 0.01) == 1e-9);
    REQUIRE(d.threshold("omega", "positivity", 0.5, false) == 0.5);
    REQUIRE(d.threshold("kernel", "max_deviation", 2.0) == 2.0);
    REQUIRE(parse_config(json::parse(R"({"suites": []})")).suites.empty());
}

TEST_CASE("invalid configs name the field", "[config]")
{
    const std::pair<const char*, const char*> cases[] = {
        {R"({"zeta": -1})", "zeta"},
        {R"({"radius": 0})", "radius"},
        {R"({"K": 4})", "K"},
        {R"({"K": 2.5})", "K"},
        {R"({"M": 100, "K": 16})", "M"},
        {R"({"window": 0})", "window"},
        {R"({"suites": ["nope"]})", "suites"},
        {R"({"tolerances": {"omega.x": -1}})", "tolerances.omega.x"},
        {R"({"tolerances": {"bogus.x": 1}})", "tolerances.bogus.x"},
        {R"({"precision": "quad"})", "precision"},
        {R"({"workers": 0})", "workers"},
        {R"({"unknown": 1})", "unknown"},
        {R"({"zeta": "one"})", "zeta"},
    };
    for (const auto& [text, field] : cases) {
        INFO(text);
        try {
            parse_config(json::parse(text));
            FAIL("accepted an invalid config");
        } catch (const config_error& e) {
            REQUIRE(e.field() == field);
        }
    }
    REQUIRE_THROWS_AS(parse_config(json::array()), config_error);
    REQUIRE_THROWS_AS(load_config("/nonexistent/cfg.json"), config_error);
}

TEST_CASE("config hash", "[config]")
{
    SuiteConfig a, b;
    REQUIRE(config_hash(a) == config_hash(b));
    b.output_dir = "elsewhere";
    b.workers = 8;
    REQUIRE(config_hash(a) == config_hash(b));
    b.K = 65;
    REQUIRE(config_hash(a) != config_hash(b));
    REQUIRE(hash_hex(0x1234).size() == 16u);
    // Canonical serialization is key-sorted, hence independent of the JSON field order.
    const auto x = parse_config(json::parse(R"({"zeta": 2, "K": 16})"));
    const auto y = parse_config(json::parse(R"({"K": 16, "zeta": 2})"));
    REQUIRE(config_hash(x) == config_hash(y));
}

TEST_CASE("seeded random numbers", "[config]")
{
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        REQUIRE(u == b.uniform());
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    REQUIRE(a.uniform() != c.uniform());
    // mt19937_64 with seed 42: first output 13930160852258120406
    Rng d(42);
    REQUIRE(d.uniform() == static_cast<double>(13930160852258120406ull >> 11) * 0x1.0p-53);
}
