#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args)
{
    const std::string cmd = std::string(DSQFT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) {
        out += buf;
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path write_config(const std::string& name, const std::string& text)
{
    const fs::path p = fs::temp_directory_path() / ("dsqft_cli_" + name + ".json");
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("omega table", "[cli]")
{
    const auto r = run("table omega --zeta 1 --r 1 --K 64");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.rfind("k,omega\n", 0) == 0);
    REQUIRE(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 129);
}

TEST_CASE("exit codes", "[cli]")
{
    REQUIRE(run("run --config " + write_config("bad", R"({"zeta": -1})").string()).code == 2);
    REQUIRE(run("run --config /nonexistent.json").code == 2);
    REQUIRE(run("frobnicate").code == 2);
    REQUIRE(run("table omega --zeta -1").code == 2);
    const fs::path out = fs::temp_directory_path() / "dsqft_cli_empty";
    REQUIRE(run("run --config " + write_config("empty", R"({"suites": []})").string() + " --out " + out.string()).code == 0);
    REQUIRE(fs::exists(out / "summary.json"));
    const fs::path out2 = fs::temp_directory_path() / "dsqft_cli_strict";
    const auto strict = write_config("strict", R"({"suites": ["omega"], "tolerances": {"omega.asymptote": 1e-300}})");
    REQUIRE(run("run --config " + strict.string() + " --out " + out2.string()).code == 1);
    fs::remove_all(out);
    fs::remove_all(out2);
}

TEST_CASE("reruns are byte-identical", "[cli]")
{
    const auto cfg = write_config("rerun", R"({"K": 16, "M": 1, "N_max": 3, "suites": ["omega", "rep", "fock"]})");
    const fs::path a = fs::temp_directory_path() / "dsqft_cli_a", b = fs::temp_directory_path() / "dsqft_cli_b";
    REQUIRE(run("run --config " + cfg.string() + " --out " + a.string()).code == 0);
    REQUIRE(run("run --config " + cfg.string() + " --out " + b.string() + " --suite omega --suite rep --suite fock").code == 0);
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        if (entry.path().filename() == "timing.json") {
            continue;
        }
        REQUIRE(slurp(entry.path()) == slurp(b / entry.path().filename()));
        ++compared;
    }
    REQUIRE(compared >= 6);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("precision override from the environment", "[cli]")
{
    const auto cfg = write_config("ext", R"({"K": 16, "suites": ["modular"]})");
    const fs::path out = fs::temp_directory_path() / "dsqft_cli_ext";
    const std::string base = "run --config " + cfg.string() + " --out " + out.string();
    REQUIRE(setenv("DSQFT_PRECISION", "extended", 1) == 0);
    run(base);
    REQUIRE(slurp(out / "modular.json").find("\"extended\"") != std::string::npos);
    REQUIRE(setenv("DSQFT_PRECISION", "bogus", 1) == 0);
    REQUIRE(run(base).code == 2);
    unsetenv("DSQFT_PRECISION");
    fs::remove_all(out);
}
