#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "qac/code.hpp"
#include "qac/serialize.hpp"

using namespace qac;
using nlohmann::json;

namespace {

CodeSystem make_sys(std::uint64_t p, unsigned m, std::vector<std::uint32_t> factors) {
    return code_system_make(field_make(p, m), group_make(factors));
}

}  // namespace

TEST_CASE("envelope round-trips a self-dual code") {
    CodeSystem sys = make_sys(5, 1, {3});
    AlgebraElement b = sample_b(sys, 42);
    std::string text = code_to_json(b, false, false);

    LoadedCode lc = code_from_json(text);
    CHECK(lc.ctx->field.q == 5);
    CHECK(lc.ctx->group.factors == std::vector<std::uint32_t>{3});
    CHECK(lc.dagger == false);
    REQUIRE(lc.b.c.size() == b.c.size());
    for (std::size_t i = 0; i < b.c.size(); ++i) CHECK(lc.b.c[i].c == b.c[i].c);
    CHECK(verify_selfdual({lc.b}).pass());
}

TEST_CASE("envelope round-trips a dagger code with matrix") {
    CodeSystem sys = make_sys(3, 1, {5});
    AlgebraElement b = sample_b_dagger(sys, 7);
    std::string text = code_to_json(b, true, true);

    json j = json::parse(text);
    CHECK(j["q"] == 3);
    CHECK(j["dagger"] == true);
    REQUIRE(j["b"].is_array());
    CHECK(j["b"].size() == 5);
    REQUIRE(j["matrix"].is_array());
    CHECK(j["matrix"].size() == 4);       // rank n-1
    CHECK(j["matrix"][0].size() == 10);   // 2n columns

    LoadedCode lc = code_from_json(text);
    CHECK(lc.dagger);
    CHECK(verify_selforthogonal({lc.b}).pass());
}

TEST_CASE("envelope works over an extension field") {
    CodeSystem sys = make_sys(2, 2, {3});
    AlgebraElement b = sample_b(sys, 1);
    std::string text = code_to_json(b, false, false);

    json j = json::parse(text);
    CHECK(j["q"] == 4);
    CHECK(j["b"][0].size() == 2);  // m digits per coefficient

    LoadedCode lc = code_from_json(text);
    CHECK(lc.ctx->field.p == 2);
    CHECK(lc.ctx->field.m == 2);
    for (std::size_t i = 0; i < b.c.size(); ++i) CHECK(lc.b.c[i].c == b.c[i].c);
}

TEST_CASE("q accepted as decimal string") {
    std::string text = R"({"q":"5","group":[3],"b":[[2],[1],[1]]})";
    LoadedCode lc = code_from_json(text);
    CHECK(lc.ctx->field.q == 5);
    CHECK(lc.dagger == false);
    CHECK(lc.b.c[0].c[0] == 2);
}

TEST_CASE("malformed envelopes are rejected") {
    CHECK_THROWS_AS(code_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(code_from_json("[1,2]"), std::invalid_argument);
    CHECK_THROWS_AS(code_from_json(R"({"q":5,"group":[3]})"), std::invalid_argument);
    // wrong coefficient count
    CHECK_THROWS_AS(code_from_json(R"({"q":5,"group":[3],"b":[[1],[1]]})"),
                    std::invalid_argument);
    // wrong digit count per coefficient
    CHECK_THROWS_AS(code_from_json(R"({"q":5,"group":[3],"b":[[1,0],[1],[1]]})"),
                    std::invalid_argument);
    // digit at the characteristic
    CHECK_THROWS_AS(code_from_json(R"({"q":5,"group":[3],"b":[[5],[1],[1]]})"),
                    std::invalid_argument);
    // q not a prime power
    CHECK_THROWS_AS(code_from_json(R"({"q":6,"group":[5],"b":[[1],[1],[1],[1],[1]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(code_from_json(R"({"q":5,"group":[],"b":[]})"), std::invalid_argument);
}

TEST_CASE("decomposition report: q=2 on Z_7 has one paired couple") {
    auto ctx = algebra_make(field_make(2, 1), group_make({7}));
    json j = json::parse(decomposition_to_json(*ctx));
    CHECK(j["q"] == 2);
    CHECK(j["n"] == 7);
    CHECK(j["exponent"] == 7);
    CHECK(j["splitting_degree"] == 3);  // ord of 2 mod 7
    CHECK(j["r"] == 0);
    CHECK(j["s"] == 1);
    REQUIRE(j["orbits"].size() == 3);
    CHECK(j["orbits"][0]["tag"] == "trivial");
    CHECK(j["orbits"][1]["members"] == json::array({1, 2, 4}));
    CHECK(j["orbits"][1]["tag"] == "paired_lead");
    CHECK(j["orbits"][1]["partner"] == 2);
    CHECK(j["orbits"][2]["members"] == json::array({3, 5, 6}));
    CHECK(j["orbits"][2]["tag"] == "paired_partner");
    REQUIRE(j["components"].size() == 1);
    CHECK(j["components"][0]["kind"] == "paired");
    CHECK(j["components"][0]["n_e"] == 3);
    CHECK(j["components"][0]["dim"] == 3);
}

TEST_CASE("decomposition report: q=2 on Z_9 has two bar-fixed components") {
    auto ctx = algebra_make(field_make(2, 1), group_make({9}));
    json j = json::parse(decomposition_to_json(*ctx));
    CHECK(j["splitting_degree"] == 6);  // ord of 2 mod 9
    CHECK(j["r"] == 2);
    CHECK(j["s"] == 0);
    REQUIRE(j["components"].size() == 2);
    CHECK(j["components"][0]["kind"] == "bar_fixed");
    CHECK(j["components"][0]["n_e"] == 3);  // orbit {1,2,4,5,7,8}, size 6
    CHECK(j["components"][1]["n_e"] == 1);  // orbit {3,6}, size 2
}

TEST_CASE("matrix_text joins digits with commas and entries with spaces") {
    FieldSpec F = field_make(2, 2);
    Matrix M = mat_zero(F, 1, 2);
    M.at(0, 0) = fe_one(F);
    M.at(0, 1) = fe_from_index(F, 2);  // digits (0, 1)
    CHECK(matrix_text(M) == "1,0 0,1\n");
}

TEST_CASE("matrix_text over a prime field has plain digits") {
    FieldSpec F = field_make(3, 1);
    Matrix M = mat_identity(F, 2);
    M.at(0, 1) = fe_from_int(F, 2);
    CHECK(matrix_text(M) == "1 2\n0 1\n");
}
