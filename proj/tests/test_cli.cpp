#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "qac_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
}

RunResult run(const std::string& args) {
    static int counter = 0;
    fs::path out = work_dir() / ("stdout." + std::to_string(counter));
    fs::path err = work_dir() / ("stderr." + std::to_string(counter));
    ++counter;
    std::string cmd = std::string("\"") + QAC_CLI_PATH + "\" " + args + " > " + out.string() +
                      " 2> " + err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

}  // namespace

TEST_CASE("count matches the closed forms") {
    RunResult r = run("count --q 3 --group 5");
    CHECK(r.code == 0);
    CHECK(r.out == "0\n");

    r = run("count --q 3 --group 5 --dagger");
    CHECK(r.code == 0);
    CHECK(r.out == "10\n");

    r = run("count --q 2 --group 3,3");
    CHECK(r.code == 0);
    CHECK(r.out == "81\n");
}

TEST_CASE("construct, verify, mindist round-trip without edits") {
    fs::path code = work_dir() / "code.json";
    RunResult r = run("construct --q 5 --group 3 --seed 7 --out " + code.string());
    REQUIRE(r.code == 0);

    r = run("verify --code " + code.string());
    CHECK(r.code == 0);
    json v = json::parse(r.out);
    CHECK(v["pass"] == true);
    CHECK(v["dagger"] == false);
    CHECK(v["algebraic"] == true);
    CHECK(v["orthogonal"] == true);
    CHECK(v["rank"] == true);

    r = run("mindist --code " + code.string() + " --cap 1000000");
    CHECK(r.code == 0);
    json m = json::parse(r.out);
    CHECK(m["length"] == 6);
    CHECK(m["dimension"] == 3);
    std::uint64_t w = m["weight"];
    CHECK(w >= 2);
    CHECK(m["relative"] == doctest::Approx(static_cast<double>(w) / 6.0));
}

TEST_CASE("dagger construct and verify round-trip") {
    fs::path code = work_dir() / "dag.json";
    RunResult r = run("construct --q 3 --group 5 --dagger --choice 4 --with-matrix --out " +
                      code.string());
    REQUIRE(r.code == 0);
    json env = json::parse(slurp(code));
    CHECK(env["dagger"] == true);
    REQUIRE(env.contains("matrix"));
    CHECK(env["matrix"].size() == 4);

    r = run("verify --code " + code.string());
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["annihilator"] == true);
}

TEST_CASE("verify reports failure for a non-solution") {
    fs::path code = work_dir() / "bad.json";
    spit(code, R"({"q":5,"group":[3],"b":[[1],[0],[0]]})");  // b = 1, but 1 != -1 here
    RunResult r = run("verify --code " + code.string());
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["pass"] == false);
}

TEST_CASE("mindist refuses when the budget is too small") {
    fs::path code = work_dir() / "code2.json";
    REQUIRE(run("construct --q 5 --group 3 --seed 1 --out " + code.string()).code == 0);
    RunResult r = run("mindist --code " + code.string() + " --cap 9");
    CHECK(r.code == 3);
    CHECK(r.err.find("refused") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("nonsense").code == 2);
    CHECK(run("count --group 5").code == 2);                       // missing --q
    CHECK(run("count --q 6 --group 5").code == 2);                 // not a prime power
    CHECK(run("count --q 3 --group 4").code == 2);                 // even order
    CHECK(run("count --q 3 --group 9").code == 2);                 // gcd violation
    CHECK(run("construct --q 5 --group 3").code == 2);             // neither seed nor choice
    CHECK(run("construct --q 5 --group 3 --seed 1 --choice 0").code == 2);
    CHECK(run("verify --code /nonexistent/x.json").code == 2);
    CHECK(run("bounds --q 2 --n 6 --delta 0.1").code == 2);        // gcd(6,2) > 1
}

TEST_CASE("bounds reports inapplicability honestly") {
    RunResult r = run("bounds --q 2 --n 127 --delta 0.02");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["mu"] == 7);
    CHECK(j["applicable"] == false);  // log_2(127)/14 alone exceeds 1/4
    CHECK(j["ratio_exponent"].is_null());
}

TEST_CASE("bounds emits finite exponents when the margin is positive") {
    RunResult r = run("bounds --q 2 --n 11 --delta 0.005");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["mu"] == 10);
    CHECK(j["applicable"] == true);
    double margin = j["margin"];
    CHECK(margin > 0);
    double exponent = j["ratio_exponent"];
    CHECK(std::isfinite(exponent));
    // locale check: a '.' decimal point must appear in the raw payload
    CHECK(r.out.find('.') != std::string::npos);
}

TEST_CASE("scan ranks lengths by entropy ratio") {
    RunResult r = run("scan --q 2 --max 33");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("n,mu,ratio\n", 0) == 0);
    CHECK(r.out.find("\n29,28,") != std::string::npos);  // best ratio up to 33
    std::size_t first = r.out.find('\n') + 1;
    CHECK(r.out.compare(first, 6, "29,28,") == 0);
}

TEST_CASE("decompose emits the orbit report") {
    RunResult r = run("decompose --q 2 --group 3,3");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["n"] == 9);
    CHECK(j["exponent"] == 3);
    CHECK(j["group"] == json::array({3, 3}));
    CHECK(j["r"].get<int>() + j["s"].get<int>() > 0);
}

TEST_CASE("experiment runs a config and writes deterministic exports") {
    fs::path cfg = work_dir() / "cfg.json";
    fs::path stem = work_dir() / "run";
    spit(cfg, std::string(R"({
        "mode": "distance-sample",
        "grid": [{"q": 2, "factors": [7]}],
        "deltas": [0.142857142857143],
        "samples": 20,
        "seed": 11,
        "caps": {"brute": 1, "weight": 500},
        "out": ")") + stem.string() + R"("
    })");

    fs::path pay1 = work_dir() / "pay1.json";
    RunResult r = run("experiment --config " + cfg.string() + " --workers 1 --out " +
                      pay1.string());
    REQUIRE(r.code == 0);
    CHECK(fs::exists(stem.string() + ".json"));
    CHECK(fs::exists(stem.string() + ".csv"));
    CHECK(r.err.find("pass") != std::string::npos);

    fs::path pay8 = work_dir() / "pay8.json";
    REQUIRE(run("experiment --config " + cfg.string() + " --workers 8 --out " + pay8.string())
                .code == 0);
    CHECK(slurp(pay1) == slurp(pay8));

    json j = json::parse(slurp(pay1));
    CHECK(j["pass"] == true);
    CHECK(j["distances"][0]["mode"] == "sampled");
    CHECK(j["distances"][0]["fraction"] == 1.0);
}

TEST_CASE("experiment rejects a malformed config with a usage error") {
    fs::path cfg = work_dir() / "bad_cfg.json";
    spit(cfg, R"({"mode":"nope"})");
    CHECK(run("experiment --config " + cfg.string()).code == 2);
}
