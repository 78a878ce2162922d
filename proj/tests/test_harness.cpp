#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "qac/harness.hpp"

using namespace qac;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("config parses numbers and decimal strings") {
    ExperimentConfig c = config_from_json(R"({
        "mode": "distance-sample",
        "grid": [{"q": 2, "factors": [7]}, {"q": "3", "factors": [5]}],
        "deltas": [0.1, 0.25],
        "samples": 50,
        "seed": 99,
        "caps": {"brute": "100000", "weight": 10000},
        "out": "run",
        "dagger": true
    })");
    CHECK(c.mode == "distance-sample");
    REQUIRE(c.grid.size() == 2);
    CHECK(c.grid[0].q == 2);
    CHECK(c.grid[1].q == 3);
    CHECK(c.grid[1].factors == std::vector<std::uint32_t>{5});
    CHECK(c.deltas == std::vector<double>{0.1, 0.25});
    CHECK(c.samples == 50);
    CHECK(c.seed == 99);
    CHECK(c.cap_brute == 100000);
    CHECK(c.cap_weight == 10000);
    CHECK(c.out == "run");
    CHECK(c.dagger);
}

TEST_CASE("config rejects malformed input") {
    CHECK_THROWS_AS(config_from_json("nope"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"mode":"skip","grid":[{"q":2,"factors":[3]}],
        "caps":{"brute":10,"weight":10}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"mode":"count-validate","grid":[],
        "caps":{"brute":10,"weight":10}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"mode":"count-validate",
        "grid":[{"q":2,"factors":[3]}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"mode":"count-validate",
        "grid":[{"q":2,"factors":[3]}],"caps":{"brute":0,"weight":10}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"mode":"count-validate",
        "grid":[{"q":2,"factors":[]}],"caps":{"brute":10,"weight":10}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"mode":"distance-sample",
        "grid":[{"q":2,"factors":[3]}],"deltas":[1.5],"samples":5,
        "caps":{"brute":10,"weight":10}})"),
                    std::invalid_argument);
    // distance mode without samples
    CHECK_THROWS_AS(config_from_json(R"({"mode":"distance-sample",
        "grid":[{"q":2,"factors":[3]}],"deltas":[0.1],
        "caps":{"brute":10,"weight":10}})"),
                    std::invalid_argument);
}

TEST_CASE("validate_counts confirms formulas on a small grid") {
    ExperimentConfig c = config_from_json(R"({
        "mode": "count-validate",
        "grid": [{"q": 2, "factors": [7]}, {"q": 3, "factors": [5]},
                 {"q": 5, "factors": [3]}, {"q": 2, "factors": [3, 3]}],
        "caps": {"brute": 1000000, "weight": 1},
        "out": ""
    })");
    ExperimentResult r = validate_counts(c, 2);
    CHECK(r.pass);
    REQUIRE(r.counts.size() == 4);
    for (const CountRecord& rec : r.counts) {
        CHECK(rec.status == "ok");
        CHECK(rec.selfdual_formula == rec.selfdual_oracle);
        CHECK(rec.dagger_formula == rec.dagger_oracle);
        for (const ComponentCheck& ck : rec.components) CHECK(ck.ok);
    }
    CHECK(r.counts[0].selfdual_formula == "7");
    CHECK(r.counts[1].selfdual_formula == "0");   // 3 = 3 mod 4
    CHECK(r.counts[1].dagger_formula == "10");
    CHECK(r.counts[2].selfdual_formula == "12");  // 5 = 1 mod 4
    CHECK(r.counts[3].selfdual_formula == "81");
}

TEST_CASE("validate_counts refuses an oversized brute budget upfront") {
    ExperimentConfig c = config_from_json(R"({
        "mode": "count-validate",
        "grid": [{"q": 2, "factors": [15]}],
        "caps": {"brute": 1000, "weight": 1},
        "out": ""
    })");
    CHECK_THROWS_AS(validate_counts(c, 1), std::invalid_argument);
}

TEST_CASE("exhaustive distance run: q=2 on Z_7 has min weight 2 everywhere") {
    ExperimentConfig c = config_from_json(R"({
        "mode": "distance-sample",
        "grid": [{"q": 2, "factors": [7]}],
        "deltas": [0.0714285714285714, 0.142857142857143],
        "samples": 10,
        "seed": 1,
        "caps": {"brute": 1, "weight": 10000},
        "out": ""
    })");
    ExperimentResult r = distance_experiment(c, 2);
    CHECK(r.pass);
    REQUIRE(r.distances.size() == 2);

    const DistanceRecord& low = r.distances[0];  // delta = 1/14: weight <= 1
    CHECK(low.mode == "exhaustive");
    CHECK(low.population == "7");
    CHECK(low.examined == 7);
    CHECK(low.at_most == 0);  // self-dual binary weights are even, so >= 2
    CHECK(low.fraction == 0.0);
    CHECK_FALSE(low.applicable);  // margin < 0 at n = 7
    CHECK(low.bound_ok);

    const DistanceRecord& high = r.distances[1];  // delta = 1/7: weight <= 2
    CHECK(high.at_most == 7);  // D = the 7 shifts, each of min weight 2
    CHECK(high.fraction == 1.0);
    REQUIRE(high.weight_histogram.size() == 1);
    CHECK(high.weight_histogram.at(2) == 7);
}

TEST_CASE("sampled mode agrees with the known spectrum") {
    // 7 * 2^7 = 896 > 500 forces sampling; each code still weighs 2.
    ExperimentConfig c = config_from_json(R"({
        "mode": "distance-sample",
        "grid": [{"q": 2, "factors": [7]}],
        "deltas": [0.0714285714285714, 0.142857142857143],
        "samples": 40,
        "seed": 7,
        "caps": {"brute": 1, "weight": 500},
        "out": ""
    })");
    ExperimentResult r = distance_experiment(c, 3);
    REQUIRE(r.distances.size() == 2);
    CHECK(r.distances[0].mode == "sampled");
    CHECK(r.distances[0].examined == 40);
    CHECK(r.distances[0].fraction == 0.0);
    CHECK(r.distances[0].wilson_low == 0.0);
    CHECK(r.distances[0].wilson_high > 0.0);
    CHECK(r.distances[1].fraction == 1.0);
    CHECK(r.distances[1].wilson_high == 1.0);
    CHECK(r.distances[1].wilson_low < 1.0);
    CHECK(r.distances[1].weight_histogram.at(2) == 40);
}

TEST_CASE("per-code weight enumeration over budget is refused, never guessed") {
    ExperimentConfig c = config_from_json(R"({
        "mode": "distance-sample",
        "grid": [{"q": 2, "factors": [15]}],
        "deltas": [0.1],
        "samples": 5,
        "seed": 1,
        "caps": {"brute": 1, "weight": 1000},
        "out": ""
    })");
    ExperimentResult r = distance_experiment(c, 1);
    REQUIRE(r.distances.size() == 1);
    CHECK(r.distances[0].mode == "refused");
    CHECK_FALSE(r.distances[0].refusal.empty());
    CHECK(r.distances[0].bound_ok);
}

TEST_CASE("dagger spectrum: ternary self-orthogonal weights divide by 3") {
    ExperimentConfig c = config_from_json(R"({
        "mode": "distance-sample",
        "grid": [{"q": 3, "factors": [5]}],
        "deltas": [0.2],
        "samples": 5,
        "seed": 3,
        "caps": {"brute": 1, "weight": 100000},
        "out": "",
        "dagger": true
    })");
    ExperimentResult r = distance_experiment(c, 2);
    REQUIRE(r.distances.size() == 1);
    const DistanceRecord& rec = r.distances[0];
    CHECK(rec.dagger);
    CHECK(rec.mode == "exhaustive");
    CHECK(rec.population == "10");
    CHECK(rec.examined == 10);
    std::uint64_t total = 0;
    for (const auto& [w, cnt] : rec.weight_histogram) {
        CHECK(w % 3 == 0);
        CHECK(w >= 3);
        total += cnt;
    }
    CHECK(total == 10);
    CHECK(rec.at_most == 0);  // cut at weight 2, weights start at 3
}

TEST_CASE("population zero yields an empty exhaustive record") {
    ExperimentConfig c = config_from_json(R"({
        "mode": "distance-sample",
        "grid": [{"q": 3, "factors": [5]}],
        "deltas": [0.5],
        "samples": 5,
        "seed": 1,
        "caps": {"brute": 1, "weight": 100000},
        "out": ""
    })");
    ExperimentResult r = distance_experiment(c, 1);
    REQUIRE(r.distances.size() == 1);
    CHECK(r.distances[0].population == "0");  // 3 = 3 mod 4: D is empty
    CHECK(r.distances[0].mode == "exhaustive");
    CHECK(r.distances[0].examined == 0);
    CHECK(r.distances[0].fraction == 0.0);
}

TEST_CASE("exports are byte-identical at 1 and 8 workers") {
    const char* text = R"({
        "mode": "distance-sample",
        "grid": [{"q": 2, "factors": [7]}, {"q": 3, "factors": [5]},
                 {"q": 2, "factors": [15]}],
        "deltas": [0.0714285714285714, 0.142857142857143],
        "samples": 30,
        "seed": 99,
        "caps": {"brute": 1, "weight": 500},
        "out": ""
    })";
    ExperimentResult a = run_experiment(config_from_json(text), 1);
    ExperimentResult b = run_experiment(config_from_json(text), 8);
    CHECK(export_json(a) == export_json(b));
    CHECK(export_csv(a) == export_csv(b));

    const char* counts = R"({
        "mode": "count-validate",
        "grid": [{"q": 2, "factors": [7]}, {"q": 3, "factors": [5]},
                 {"q": 5, "factors": [3]}],
        "caps": {"brute": 1000000, "weight": 1},
        "out": ""
    })";
    ExperimentResult ca = run_experiment(config_from_json(counts), 1);
    ExperimentResult cb = run_experiment(config_from_json(counts), 8);
    CHECK(export_json(ca) == export_json(cb));
    CHECK(export_csv(ca) == export_csv(cb));
}

TEST_CASE("json export carries the config echo and typed records") {
    const char* text = R"({
        "mode": "distance-sample",
        "grid": [{"q": 2, "factors": [7]}],
        "deltas": [0.142857142857143],
        "samples": 5,
        "seed": 4,
        "caps": {"brute": 1, "weight": 10000},
        "out": ""
    })";
    ExperimentResult r = run_experiment(config_from_json(text), 2);
    json j = json::parse(export_json(r));
    CHECK(j["config"]["mode"] == "distance-sample");
    CHECK(j["config"]["seed"] == 4);
    CHECK(j["config"]["caps"]["weight"] == 10000);
    REQUIRE(j["distances"].size() == 1);
    const json& rec = j["distances"][0];
    CHECK(rec["mode"] == "exhaustive");
    CHECK(rec["population"] == "7");
    CHECK(rec["applicable"] == false);
    CHECK(rec["ratio_exponent"].is_null());  // inapplicable margin at n = 7
    CHECK(rec["weights"]["2"] == 7);
    CHECK(j["pass"] == true);
    // wall-clock time never reaches the exported bytes
    CHECK(export_json(r).find("wall") == std::string::npos);
}

TEST_CASE("csv export has one row per record with na placeholders") {
    const char* text = R"({
        "mode": "distance-sample",
        "grid": [{"q": 2, "factors": [7]}, {"q": 2, "factors": [15]}],
        "deltas": [0.142857142857143],
        "samples": 5,
        "seed": 4,
        "caps": {"brute": 1, "weight": 10000},
        "out": ""
    })";
    ExperimentResult r = run_experiment(config_from_json(text), 2);
    std::string csv = export_csv(r);
    auto lines = [&] {
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (pos < csv.size()) {
            std::size_t nl = csv.find('\n', pos);
            out.push_back(csv.substr(pos, nl - pos));
            pos = nl + 1;
        }
        return out;
    }();
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].rfind("q,group,n,dagger,delta", 0) == 0);
    CHECK(lines[1].rfind("2,7,7,false,", 0) == 0);
    CHECK(lines[1].find(",exhaustive,") != std::string::npos);
    CHECK(lines[1].find(",na,true") != std::string::npos);  // inapplicable exponent
    CHECK(lines[2].rfind("2,15,15,", 0) == 0);
    CHECK(lines[2].find(",refused,na,na,na,na,na,na,na,na") != std::string::npos);
}

TEST_CASE("export_files honors the suffix convention") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qac_harness_test";
    fs::create_directories(dir);
    const char* text = R"({
        "mode": "count-validate",
        "grid": [{"q": 2, "factors": [3]}],
        "caps": {"brute": 100, "weight": 1},
        "out": ""
    })";
    ExperimentResult r = run_experiment(config_from_json(text), 1);

    r.config.out = (dir / "only.json").string();
    auto w1 = export_files(r);
    REQUIRE(w1.size() == 1);
    CHECK(slurp(w1[0]) == export_json(r));

    r.config.out = (dir / "only.csv").string();
    auto w2 = export_files(r);
    REQUIRE(w2.size() == 1);
    CHECK(slurp(w2[0]) == export_csv(r));

    r.config.out = (dir / "both").string();
    auto w3 = export_files(r);
    REQUIRE(w3.size() == 2);
    CHECK(slurp(w3[0]) == export_json(r));
    CHECK(slurp(w3[1]) == export_csv(r));

    r.config.out.clear();
    CHECK_THROWS_AS(export_files(r), std::invalid_argument);
    fs::remove_all(dir);
}
