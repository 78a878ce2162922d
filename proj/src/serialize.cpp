#include "qac/serialize.hpp"

#include <json.hpp>

#include "qac/group.hpp"

namespace qac {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json json_u128(u128 v) {
    if (v <= static_cast<u128>(UINT64_MAX)) return static_cast<std::uint64_t>(v);
    return to_decimal(v);
}

u128 u128_from_json(const json& j, const char* what) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
        return static_cast<u128>(j.get<std::int64_t>());
    if (j.is_string()) return parse_u128(j.get<std::string>());
    throw std::invalid_argument(std::string(what) + ": expected a non-negative integer");
}

ordered_json element_digits(const FieldElement& a) {
    ordered_json d = ordered_json::array();
    for (std::uint32_t c : a.c) d.push_back(c);
    return d;
}

ordered_json matrix_digits(const Matrix& M) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < M.rows; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < M.cols; ++j) row.push_back(element_digits(M.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string code_to_json(const AlgebraElement& b, bool dagger, bool with_matrix) {
    const AlgebraContext& ctx = *b.ctx;
    ordered_json j;
    j["q"] = json_u128(ctx.field.q);
    j["group"] = ctx.group.factors;
    j["dagger"] = dagger;
    ordered_json coeffs = ordered_json::array();
    for (const FieldElement& c : b.c) coeffs.push_back(element_digits(c));
    j["b"] = std::move(coeffs);
    if (with_matrix) {
        Matrix M = dagger ? dagger_generator({b}) : generator_matrix({b});
        j["matrix"] = matrix_digits(M);
    }
    return j.dump();
}

LoadedCode code_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("code envelope: ") + e.what());
    }
    if (!j.is_object() || !j.contains("q") || !j.contains("group") || !j.contains("b"))
        throw std::invalid_argument("code envelope: required fields are q, group, b");

    FieldSpec F = field_from_order(u128_from_json(j["q"], "q"));
    if (!j["group"].is_array() || j["group"].empty())
        throw std::invalid_argument("code envelope: group must list cyclic factor sizes");
    std::vector<std::uint32_t> factors;
    for (const auto& f : j["group"]) {
        u128 v = u128_from_json(f, "group factor");
        if (v < 1 || v > UINT32_MAX)
            throw std::invalid_argument("code envelope: group factor out of range");
        factors.push_back(static_cast<std::uint32_t>(v));
    }
    AbelianGroup G = group_make(factors);

    LoadedCode out;
    out.ctx = algebra_make(F, G);
    out.dagger = j.value("dagger", false);
    const json& bj = j["b"];
    if (!bj.is_array() || bj.size() != G.n)
        throw std::invalid_argument("code envelope: b must hold one coefficient per group element");
    out.b = ae_zero(*out.ctx);
    for (std::uint64_t i = 0; i < G.n; ++i) {
        const json& cj = bj[i];
        if (!cj.is_array() || cj.size() != out.ctx->field.m)
            throw std::invalid_argument("code envelope: each coefficient needs m digits");
        for (unsigned t = 0; t < out.ctx->field.m; ++t) {
            u128 d = u128_from_json(cj[t], "digit");
            if (d >= out.ctx->field.p)
                throw std::invalid_argument("code envelope: digit exceeds the characteristic");
            out.b.c[i].c[t] = static_cast<std::uint32_t>(d);
        }
    }
    return out;
}

std::string decomposition_to_json(const AlgebraContext& ctx) {
    ordered_json j;
    j["q"] = json_u128(ctx.field.q);
    j["p"] = ctx.field.p;
    j["m"] = ctx.field.m;
    j["group"] = ctx.group.factors;
    j["n"] = ctx.group.n;
    j["exponent"] = ctx.group.exponent;
    j["splitting_degree"] = ctx.d;
    const OrbitClassification& cls = ctx.orbits;
    j["r"] = cls.r;
    j["s"] = cls.s;
    ordered_json orbits = ordered_json::array();
    for (const Orbit& o : cls.orbits) {
        ordered_json oj;
        oj["members"] = o.members;
        switch (o.tag) {
            case OrbitTag::trivial: oj["tag"] = "trivial"; break;
            case OrbitTag::bar_fixed: oj["tag"] = "bar_fixed"; break;
            case OrbitTag::paired_lead: oj["tag"] = "paired_lead"; break;
            case OrbitTag::paired_partner: oj["tag"] = "paired_partner"; break;
        }
        if (o.tag == OrbitTag::paired_lead || o.tag == OrbitTag::paired_partner)
            oj["partner"] = o.partner;
        orbits.push_back(std::move(oj));
    }
    j["orbits"] = std::move(orbits);
    ordered_json comps = ordered_json::array();
    for (std::size_t k = 0; k < cls.component_orbits.size(); ++k) {
        ordered_json cj;
        cj["orbit"] = cls.component_orbits[k];
        cj["kind"] = k < cls.r ? "bar_fixed" : "paired";
        cj["n_e"] = cls.component_dims[k];
        cj["dim"] = cls.orbits[cls.component_orbits[k]].members.size();
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    return j.dump();
}

std::string matrix_text(const Matrix& M) {
    std::string out;
    for (std::size_t i = 0; i < M.rows; ++i) {
        for (std::size_t j = 0; j < M.cols; ++j) {
            if (j) out += ' ';
            const FieldElement& e = M.at(i, j);
            for (std::size_t t = 0; t < e.c.size(); ++t) {
                if (t) out += ',';
                out += std::to_string(e.c[t]);
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace qac
