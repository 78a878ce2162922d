#include "qac/code.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "qac/rng.hpp"

namespace qac {

namespace {

// Lookup-table arithmetic on fe_index values; the workhorse of the
// enumeration kernels. Only built for small fields.
struct SmallField {
    static constexpr u128 kMax = 512;

    std::uint32_t q = 0;
    std::vector<std::uint16_t> addt, mult;
    std::vector<std::uint16_t> negt, invt;

    static SmallField make(const FieldSpec& F) {
        if (F.q > kMax) throw std::invalid_argument("field too large for table arithmetic");
        SmallField T;
        T.q = static_cast<std::uint32_t>(F.q);
        std::vector<FieldElement> el;
        el.reserve(T.q);
        for (u128 i = 0; i < F.q; ++i) el.push_back(fe_from_index(F, i));
        T.addt.resize(static_cast<std::size_t>(T.q) * T.q);
        T.mult.resize(static_cast<std::size_t>(T.q) * T.q);
        T.negt.resize(T.q);
        T.invt.resize(T.q);
        for (std::uint32_t a = 0; a < T.q; ++a) {
            T.negt[a] = static_cast<std::uint16_t>(fe_index(fe_neg(el[a])));
            T.invt[a] = a ? static_cast<std::uint16_t>(fe_index(fe_inv(el[a]))) : 0;
            for (std::uint32_t b = 0; b < T.q; ++b) {
                T.addt[a * T.q + b] = static_cast<std::uint16_t>(fe_index(fe_add(el[a], el[b])));
                T.mult[a * T.q + b] = static_cast<std::uint16_t>(fe_index(fe_mul(el[a], el[b])));
            }
        }
        return T;
    }

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return addt[a * q + b]; }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return mult[a * q + b]; }
};

std::vector<std::uint16_t> pack_element(const AlgebraElement& a) {
    std::vector<std::uint16_t> v(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) v[i] = static_cast<std::uint16_t>(fe_index(a.c[i]));
    return v;
}

AlgebraElement unpack_element(const AlgebraContext& ctx, const std::vector<std::uint16_t>& v) {
    AlgebraElement a;
    a.ctx = &ctx;
    a.c.reserve(v.size());
    for (std::uint16_t idx : v) a.c.push_back(fe_from_index(ctx.field, idx));
    return a;
}

// Convolution scaffolding shared by the oracles: for each representative z of
// the inversion action (z = 0 first), the permutation u -> z^{-1} u, so that
// (b bar(b))_z = sum_u b_u b_{perm_z(u)}. The product is bar-fixed, so the
// representatives determine all coefficients.
struct ConvolutionPlan {
    std::vector<std::uint32_t> zs;
    std::vector<std::vector<std::uint32_t>> perm;

    static ConvolutionPlan make(const AbelianGroup& G) {
        ConvolutionPlan P;
        for (std::uint64_t z = 0; z < G.n; ++z)
            if (group_inverse(G, z) >= z) P.zs.push_back(static_cast<std::uint32_t>(z));
        P.perm.reserve(P.zs.size());
        for (std::uint32_t z : P.zs) {
            std::vector<std::uint32_t> row(G.n);
            std::uint64_t zi = group_inverse(G, z);
            for (std::uint64_t u = 0; u < G.n; ++u)
                row[u] = static_cast<std::uint32_t>(group_mul(G, zi, u));
            P.perm.push_back(std::move(row));
        }
        return P;
    }
};

// b bar(b) == target on every representative coefficient, early exit.
bool convolution_matches(const SmallField& T, const ConvolutionPlan& P,
                         const std::vector<std::uint16_t>& b, const std::vector<std::uint16_t>& target) {
    for (std::size_t k = 0; k < P.zs.size(); ++k) {
        const std::vector<std::uint32_t>& perm = P.perm[k];
        std::uint16_t acc = 0;
        for (std::size_t u = 0; u < b.size(); ++u) acc = T.add(acc, T.mul(b[u], b[perm[u]]));
        if (acc != target[P.zs[k]]) return false;
    }
    return true;
}

bool pow_exceeds(u128 base, std::size_t e, u128 limit) {
    u128 r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > limit / base) return true;
        r *= base;
    }
    return false;
}

std::vector<AlgebraElement> brute_force_scan(const AlgebraContext& ctx, u128 cap, bool dagger) {
    const FieldSpec& F = ctx.field;
    const AbelianGroup& G = ctx.group;
    if (pow_exceeds(F.q, G.n, cap)) throw BudgetError("q^n exceeds the brute-force cap");
    SmallField T = SmallField::make(F);
    ConvolutionPlan P = ConvolutionPlan::make(G);

    std::vector<std::uint16_t> target(G.n, 0);
    std::uint16_t minus_one = static_cast<std::uint16_t>(fe_index(fe_neg(fe_one(F))));
    if (!dagger) {
        target[0] = minus_one;
    } else {
        std::uint16_t inv_n = static_cast<std::uint16_t>(fe_index(fe_inv(fe_from_int(F, G.n))));
        for (std::uint64_t z = 0; z < G.n; ++z) target[z] = inv_n;
        target[0] = T.add(inv_n, minus_one);
    }

    std::vector<AlgebraElement> out;
    std::vector<std::uint16_t> b(G.n, 0);
    u128 total = 1;
    for (std::uint64_t i = 0; i < G.n; ++i) total *= F.q;
    for (u128 t = 0; t < total; ++t) {
        bool candidate = true;
        if (dagger) {
            // e0 b = 0 (coefficient sum zero) is implied by the full
            // condition; cheap reject first
            std::uint16_t sum = 0;
            for (std::uint16_t v : b) sum = T.add(sum, v);
            candidate = (sum == 0);
        }
        if (candidate && convolution_matches(T, P, b, target)) out.push_back(unpack_element(ctx, b));
        // odometer, first coordinate fastest
        for (std::uint64_t pos = 0; pos < G.n; ++pos) {
            if (++b[pos] < T.q) break;
            b[pos] = 0;
        }
    }
    return out;
}

}  // namespace

u128 count_dagger(const AlgebraContext& ctx) {
    const OrbitClassification& cls = ctx.orbits;
    u128 prod = 1;
    for (std::size_t k = 0; k < cls.component_orbits.size(); ++k) {
        u128 Q = checked_pow(ctx.field.q, static_cast<unsigned>(cls.component_dims[k]));
        prod = checked_mul(prod, k < cls.r ? checked_add(Q, 1) : Q - 1);
    }
    return prod;
}

u128 count_selfdual(const AlgebraContext& ctx) {
    u128 q = ctx.field.q;
    u128 t0 = (q % 2 == 0) ? 1 : (q % 4 == 1 ? 2 : 0);
    if (t0 == 0) return 0;
    return checked_mul(t0, count_dagger(ctx));
}

ComponentSolutionSet component_solutions(const AlgebraContext& ctx, const Decomposition& dec,
                                         std::size_t comp_index) {
    const Component& comp = dec.components.at(comp_index);
    ComponentSolutionSet s;
    s.comp_index = comp_index;
    if (comp.kind == ComponentKind::trivial) {
        s.kind = SolutionKind::t_zero;
        s.step = ae_zero(ctx);
        std::optional<FieldElement> alpha = sqrt_minus_one(ctx.field);
        if (!alpha) {
            s.count = 0;
            s.base = ae_zero(ctx);
        } else {
            s.count = (ctx.field.q % 2 == 0) ? 1 : 2;
            s.base = ae_scale(*alpha, comp.e);
        }
        return s;
    }
    AlgebraElement g = component_generator(ctx, dec, comp_index);
    u128 Q = checked_pow(ctx.field.q, static_cast<unsigned>(comp.n_e));
    if (comp.kind == ComponentKind::bar_fixed) {
        s.kind = SolutionKind::t_bar_fixed;
        s.step = ae_pow(g, Q - 1, comp.e);  // order Q + 1
        s.base = (ctx.field.q % 2 == 0) ? comp.e : ae_pow(g, (Q - 1) / 2, comp.e);
        s.count = checked_add(Q, 1);
    } else {
        s.kind = SolutionKind::t_paired;
        s.step = g;  // order Q - 1
        s.base = comp.e;
        s.count = Q - 1;
    }
    return s;
}

AlgebraElement solution_at(const AlgebraContext& ctx, const Decomposition& dec,
                           const ComponentSolutionSet& set, u128 j) {
    if (j >= set.count) throw std::out_of_range("solution_at: index exceeds the set size");
    const Component& comp = dec.components.at(set.comp_index);
    switch (set.kind) {
        case SolutionKind::t_zero:
            return j == 0 ? set.base : ae_neg(set.base);
        case SolutionKind::t_bar_fixed:
            return multiply(set.base, ae_pow(set.step, j, comp.e));
        case SolutionKind::t_paired: {
            AlgebraElement bp = ae_pow(set.step, j, comp.e);
            u128 Q = set.count + 1;
            AlgebraElement bpp = ae_neg(ae_pow(bar(bp), Q - 2, comp.ebar));
            return ae_add(bp, bpp);
        }
    }
    throw std::logic_error("solution_at: unknown kind");
}

std::vector<AlgebraElement> brute_force_component_solutions(const AlgebraContext& ctx,
                                                            const Decomposition& dec,
                                                            std::size_t comp_index, u128 cap) {
    const Component& comp = dec.components.at(comp_index);
    const AbelianGroup& G = ctx.group;

    // canonical basis of FG ehat
    Matrix rows = mat_zero(ctx.field, G.n, G.n);
    for (std::uint64_t i = 0; i < G.n; ++i) {
        AlgebraElement r = multiply(ae_basis(ctx, i), comp.ehat);
        for (std::uint64_t z = 0; z < G.n; ++z) rows.at(i, z) = r.c[z];
    }
    Matrix basis = mat_row_basis(rows);
    std::size_t dim = basis.rows;
    if (pow_exceeds(ctx.field.q, dim, cap)) throw BudgetError("component exhaustion exceeds the cap");

    SmallField T = SmallField::make(ctx.field);
    ConvolutionPlan P = ConvolutionPlan::make(G);
    std::vector<std::uint16_t> target = pack_element(ae_neg(comp.ehat));

    std::vector<std::vector<std::uint16_t>> brow(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        brow[i].resize(G.n);
        for (std::uint64_t z = 0; z < G.n; ++z)
            brow[i][z] = static_cast<std::uint16_t>(fe_index(basis.at(i, z)));
    }
    // scaled[i][s] = s * brow[i]
    std::vector<std::vector<std::vector<std::uint16_t>>> scaled(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        scaled[i].assign(T.q, std::vector<std::uint16_t>(G.n));
        for (std::uint32_t sidx = 0; sidx < T.q; ++sidx)
            for (std::uint64_t z = 0; z < G.n; ++z)
                scaled[i][sidx][z] = T.mul(static_cast<std::uint16_t>(sidx), brow[i][z]);
    }

    std::vector<AlgebraElement> out;
    std::vector<std::uint16_t> digit(dim, 0);
    std::vector<std::uint16_t> cur(G.n, 0);
    u128 total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= ctx.field.q;
    for (u128 t = 0; t < total; ++t) {
        if (convolution_matches(T, P, cur, target)) out.push_back(unpack_element(ctx, cur));
        for (std::size_t pos = 0; pos < dim; ++pos) {
            std::uint16_t old = digit[pos];
            std::uint16_t next = static_cast<std::uint16_t>(old + 1 == T.q ? 0 : old + 1);
            digit[pos] = next;
            std::uint16_t ds = T.add(next, T.negt[old]);
            const std::vector<std::uint16_t>& delta = scaled[pos][ds];
            for (std::uint64_t z = 0; z < G.n; ++z) cur[z] = T.add(cur[z], delta[z]);
            if (next != 0) break;
        }
    }
    return out;
}

CodeSystem code_system_make(const FieldSpec& field, const AbelianGroup& group) {
    CodeSystem sys;
    sys.ctx = algebra_make(field, group);
    sys.dec = idempotent_decomposition(*sys.ctx);
    for (std::size_t k = 0; k < sys.dec.components.size(); ++k)
        sys.solutions.push_back(component_solutions(*sys.ctx, sys.dec, k));
    return sys;
}

AlgebraElement one_dagger(const AlgebraContext& ctx) {
    FieldElement inv_n = fe_inv(fe_from_int(ctx.field, ctx.group.n));
    AlgebraElement a = ae_zero(ctx);
    for (std::uint64_t i = 0; i < ctx.group.n; ++i) a.c[i] = fe_neg(inv_n);
    a.c[0] = fe_add(a.c[0], fe_one(ctx.field));
    return a;
}

AlgebraElement build_b(const CodeSystem& sys, const std::vector<u128>& choice) {
    if (choice.size() != sys.dec.components.size())
        throw std::invalid_argument("build_b: one choice per component required");
    if (sys.solutions[0].count == 0)
        throw std::domain_error("build_b: no self-dual codes exist (-1 is not a square in F_q)");
    AlgebraElement b = ae_zero(*sys.ctx);
    for (std::size_t k = 0; k < choice.size(); ++k)
        b = ae_add(b, solution_at(*sys.ctx, sys.dec, sys.solutions[k], choice[k]));
    return b;
}

AlgebraElement build_b_dagger(const CodeSystem& sys, const std::vector<u128>& choice) {
    if (choice.size() + 1 != sys.dec.components.size())
        throw std::invalid_argument("build_b_dagger: one choice per non-trivial component required");
    AlgebraElement b = ae_zero(*sys.ctx);
    for (std::size_t k = 1; k < sys.dec.components.size(); ++k)
        b = ae_add(b, solution_at(*sys.ctx, sys.dec, sys.solutions[k], choice[k - 1]));
    return b;
}

namespace {

u128 draw_below(SplitMix64& rng, u128 bound) {
    if (bound == 0) throw std::domain_error("empty solution set");
    if (bound > static_cast<u128>(UINT64_MAX))
        throw std::invalid_argument("solution set too large to sample");
    return rng.below(static_cast<std::uint64_t>(bound));
}

}  // namespace

AlgebraElement sample_b(const CodeSystem& sys, std::uint64_t seed) {
    if (sys.solutions[0].count == 0)
        throw std::domain_error("sample_b: no self-dual codes exist (-1 is not a square in F_q)");
    std::vector<u128> choice;
    for (std::size_t k = 0; k < sys.solutions.size(); ++k) {
        SplitMix64 rng = SplitMix64::substream(seed, k);
        choice.push_back(draw_below(rng, sys.solutions[k].count));
    }
    return build_b(sys, choice);
}

AlgebraElement sample_b_dagger(const CodeSystem& sys, std::uint64_t seed) {
    std::vector<u128> choice;
    for (std::size_t k = 1; k < sys.solutions.size(); ++k) {
        SplitMix64 rng = SplitMix64::substream(seed, k);
        choice.push_back(draw_below(rng, sys.solutions[k].count));
    }
    return build_b_dagger(sys, choice);
}

Matrix generator_matrix(const TypeICode& code) {
    const AlgebraContext& ctx = *code.b.ctx;
    std::uint64_t n = ctx.group.n;
    Matrix M = mat_zero(ctx.field, n, 2 * n);
    for (std::uint64_t i = 0; i < n; ++i) {
        M.at(i, i) = fe_one(ctx.field);
        std::vector<std::uint64_t> rho = cayley_permutation(ctx.group, i);
        for (std::uint64_t j = 0; j < n; ++j) M.at(i, n + rho[j]) = code.b.c[j];
    }
    return M;
}

namespace {

Matrix dagger_rows(const TypeIDaggerCode& code) {
    const AlgebraContext& ctx = *code.b_dagger.ctx;
    std::uint64_t n = ctx.group.n;
    AlgebraElement od = one_dagger(ctx);
    Matrix M = mat_zero(ctx.field, n, 2 * n);
    for (std::uint64_t i = 0; i < n; ++i) {
        AlgebraElement u = multiply(ae_basis(ctx, i), od);
        AlgebraElement v = multiply(ae_basis(ctx, i), code.b_dagger);
        for (std::uint64_t z = 0; z < n; ++z) {
            M.at(i, z) = u.c[z];
            M.at(i, n + z) = v.c[z];
        }
    }
    return M;
}

}  // namespace

Matrix dagger_generator(const TypeIDaggerCode& code) {
    Matrix B = mat_row_basis(dagger_rows(code));
    if (B.rows + 1 != code.b_dagger.ctx->group.n)
        throw std::logic_error("dagger_generator: row space dimension is not n-1");
    return B;
}

VerifyReport verify_selfdual(const TypeICode& code) {
    const AlgebraContext& ctx = *code.b.ctx;
    VerifyReport r;
    r.algebraic = (multiply(code.b, bar(code.b)) == ae_neg(ae_one(ctx)));
    r.annihilator = true;
    Matrix Gm = generator_matrix(code);
    r.orthogonal = mat_is_zero(mat_mul(Gm, mat_transpose(Gm)));
    r.rank = (mat_rank(Gm) == ctx.group.n);
    return r;
}

VerifyReport verify_selforthogonal(const TypeIDaggerCode& code) {
    const AlgebraContext& ctx = *code.b_dagger.ctx;
    VerifyReport r;
    r.algebraic = (multiply(code.b_dagger, bar(code.b_dagger)) == ae_neg(one_dagger(ctx)));
    FieldElement sum = fe_zero(ctx.field);
    for (const FieldElement& v : code.b_dagger.c) sum = fe_add(sum, v);
    r.annihilator = sum.is_zero();  // e0 b = 0
    Matrix B = mat_row_basis(dagger_rows(code));
    r.rank = (B.rows + 1 == ctx.group.n);
    r.orthogonal = mat_is_zero(mat_mul(B, mat_transpose(B)));
    return r;
}

namespace {

std::uint64_t min_weight_bitpacked(const Matrix& G) {
    std::size_t k = G.rows, N = G.cols;
    std::vector<std::uint64_t> lo(k, 0), hi(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            if (G.at(i, j).is_zero()) continue;
            if (j < 64)
                lo[i] |= 1ull << j;
            else
                hi[i] |= 1ull << (j - 64);
        }
    }
    std::uint64_t best = UINT64_MAX;
    std::uint64_t clo = 0, chi = 0;
    std::uint64_t total = 1ull << k;
    for (std::uint64_t t = 1; t < total; ++t) {
        unsigned flip = static_cast<unsigned>(__builtin_ctzll(t));
        clo ^= lo[flip];
        chi ^= hi[flip];
        std::uint64_t w = static_cast<std::uint64_t>(__builtin_popcountll(clo)) +
                          static_cast<std::uint64_t>(__builtin_popcountll(chi));
        best = std::min(best, w);
    }
    return best;
}

std::uint64_t min_weight_table(const Matrix& G) {
    const FieldSpec& F = *G.field;
    std::size_t k = G.rows, N = G.cols;
    SmallField T = SmallField::make(F);
    std::vector<std::vector<std::uint16_t>> rows(k, std::vector<std::uint16_t>(N));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < N; ++j)
            rows[i][j] = static_cast<std::uint16_t>(fe_index(G.at(i, j)));
    std::vector<std::vector<std::vector<std::uint16_t>>> scaled(k);
    for (std::size_t i = 0; i < k; ++i) {
        scaled[i].assign(T.q, std::vector<std::uint16_t>(N));
        for (std::uint32_t s = 0; s < T.q; ++s)
            for (std::size_t j = 0; j < N; ++j)
                scaled[i][s][j] = T.mul(static_cast<std::uint16_t>(s), rows[i][j]);
    }

    std::uint64_t best = UINT64_MAX;
    std::vector<std::uint16_t> cur(N);
    std::vector<std::uint16_t> digit(k);
    // scalar-class transversal: first nonzero message digit fixed to 1
    for (std::size_t L = 0; L < k; ++L) {
        cur = rows[L];
        std::fill(digit.begin(), digit.end(), 0);
        for (;;) {
            std::uint64_t w = 0;
            for (std::size_t j = 0; j < N; ++j) w += (cur[j] != 0);
            best = std::min(best, w);
            std::size_t pos = L + 1;
            while (pos < k) {
                std::uint16_t old = digit[pos];
                std::uint16_t next = static_cast<std::uint16_t>(old + 1 == T.q ? 0 : old + 1);
                digit[pos] = next;
                std::uint16_t ds = T.add(next, T.negt[old]);
                const std::vector<std::uint16_t>& delta = scaled[pos][ds];
                for (std::size_t j = 0; j < N; ++j) cur[j] = T.add(cur[j], delta[j]);
                if (next != 0) break;
                ++pos;
            }
            if (pos >= k) break;
        }
    }
    return best;
}

std::uint64_t min_weight_generic(const Matrix& G) {
    const FieldSpec& F = *G.field;
    std::size_t k = G.rows, N = G.cols;
    std::vector<FieldElement> scalars;
    for (u128 s = 0; s < F.q; ++s) scalars.push_back(fe_from_index(F, s));
    std::uint64_t best = UINT64_MAX;
    std::vector<u128> digit(k, 0);
    for (std::size_t L = 0; L < k; ++L) {
        std::fill(digit.begin(), digit.end(), 0);
        digit[L] = 1;
        for (;;) {
            std::vector<FieldElement> cur(N, fe_zero(F));
            for (std::size_t i = L; i < k; ++i) {
                if (digit[i] == 0) continue;
                const FieldElement& s = scalars[static_cast<std::size_t>(digit[i])];
                for (std::size_t j = 0; j < N; ++j)
                    cur[j] = fe_add(cur[j], fe_mul(s, G.at(i, j)));
            }
            std::uint64_t w = 0;
            for (const FieldElement& v : cur) w += !v.is_zero();
            best = std::min(best, w);
            std::size_t pos = L + 1;
            while (pos < k && ++digit[pos] == F.q) digit[pos++] = 0;
            if (pos >= k) break;
        }
    }
    return best;
}

}  // namespace

std::uint64_t matrix_min_weight(const Matrix& G, u128 budget) {
    if (G.rows == 0) throw std::invalid_argument("matrix_min_weight: empty row space");
    if (pow_exceeds(G.field->q, G.rows, budget)) throw BudgetError("q^dim exceeds the enumeration budget");
    if (G.field->q == 2 && G.cols <= 128 && G.rows < 64) return min_weight_bitpacked(G);
    if (G.field->q <= SmallField::kMax) return min_weight_table(G);
    return min_weight_generic(G);
}

std::uint64_t minimum_weight(const TypeICode& code, u128 budget) {
    return matrix_min_weight(generator_matrix(code), budget);
}

std::uint64_t minimum_weight(const TypeIDaggerCode& code, u128 budget) {
    return matrix_min_weight(dagger_generator(code), budget);
}

std::vector<AlgebraElement> brute_force_selfdual_set(const AlgebraContext& ctx, u128 cap) {
    return brute_force_scan(ctx, cap, false);
}

std::vector<AlgebraElement> brute_force_dagger_set(const AlgebraContext& ctx, u128 cap) {
    return brute_force_scan(ctx, cap, true);
}

}  // namespace qac
