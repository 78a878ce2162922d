#include "qac/algebra.hpp"

#include <numeric>
#include <stdexcept>

#include "qac/factor.hpp"
#include "qac/rng.hpp"

namespace qac {

namespace {

using PMatrix = std::vector<std::vector<std::uint64_t>>;  // dense over Z_p

std::uint64_t p_inv(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1, e = p - 2;
    a %= p;
    while (e > 0) {
        if (e & 1u) r = r * a % p;
        a = a * a % p;
        e >>= 1u;
    }
    return r;
}

// Reduced row echelon form in place; returns the pivot column of each pivot
// row in order.
std::vector<std::size_t> rref(PMatrix& A, std::uint64_t p) {
    std::vector<std::size_t> pivots;
    std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && A[sel][col] % p == 0) ++sel;
        if (sel == rows) continue;
        std::swap(A[sel], A[row]);
        std::uint64_t inv = p_inv(A[row][col], p);
        for (std::size_t j = col; j < cols; ++j) A[row][j] = A[row][j] % p * inv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row) continue;
            std::uint64_t f = A[i][col] % p;
            if (f == 0) continue;
            for (std::size_t j = col; j < cols; ++j)
                A[i][j] = (A[i][j] + (p - f) * A[row][j]) % p;
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

void check_ctx(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.ctx != b.ctx) throw std::invalid_argument("algebra elements belong to different contexts");
}

FieldElement splitting_eval_base_modulus(const AlgebraContext& ctx, const FieldElement& x) {
    const FieldSpec& K = ctx.splitting;
    FieldElement v = fe_zero(K);
    for (std::size_t i = ctx.field.modulus.size(); i-- > 0;) {
        v = fe_add(fe_mul(v, x), fe_from_int(K, ctx.field.modulus[i]));
    }
    return v;
}

// Coordinates of kappa in the base field via the precomputed solve; throws if
// kappa is not in the q-element subfield.
FieldElement coerce_to_base(const AlgebraContext& ctx, const FieldElement& kappa) {
    const std::uint64_t p = ctx.field.p;
    const unsigned m = ctx.field.m;
    const unsigned M = ctx.splitting.m;
    FieldElement out = fe_zero(ctx.field);
    for (unsigned i = 0; i < m; ++i) {
        std::uint64_t acc = 0;
        for (unsigned j = 0; j < M; ++j) acc = (acc + static_cast<std::uint64_t>(ctx.coerce_rows[i][j]) * kappa.c[j]) % p;
        out.c[i] = static_cast<std::uint32_t>(acc);
    }
    // consistency: the claimed base element must embed back to kappa
    FieldElement back = fe_zero(ctx.splitting);
    for (unsigned i = 0; i < m; ++i) {
        if (out.c[i] == 0) continue;
        back = fe_add(back, fe_mul(fe_from_int(ctx.splitting, out.c[i]), ctx.gamma_pow[i]));
    }
    if (!(back == kappa))
        throw std::logic_error("idempotent coefficient does not lie in the base field");
    return out;
}

// Character pairing: zeta exponent of chi_a(x) for tuples a, x.
std::uint64_t char_exponent(const AbelianGroup& G, const std::vector<std::uint32_t>& a,
                            const std::vector<std::uint32_t>& x) {
    u128 acc = 0;
    for (std::size_t t = 0; t < G.factors.size(); ++t) {
        u128 term = static_cast<u128>(G.exponent / G.factors[t]) * a[t] % G.exponent;
        term = term * x[t] % G.exponent;
        acc = (acc + term) % G.exponent;
    }
    return static_cast<std::uint64_t>(acc);
}

AlgebraElement orbit_idempotent(const AlgebraContext& ctx, const Orbit& O,
                                const FieldElement& inv_n) {
    const AbelianGroup& G = ctx.group;
    std::vector<std::vector<std::uint32_t>> orbit_tuples;
    orbit_tuples.reserve(O.members.size());
    for (std::uint64_t a : O.members) orbit_tuples.push_back(group_tuple(G, a));

    AlgebraElement e;
    e.ctx = &ctx;
    e.c.reserve(G.n);
    for (std::uint64_t x = 0; x < G.n; ++x) {
        std::vector<std::uint32_t> y = group_tuple(G, group_inverse(G, x));
        FieldElement s = fe_zero(ctx.splitting);
        for (const auto& a : orbit_tuples) s = fe_add(s, ctx.zeta_pow[char_exponent(G, a, y)]);
        e.c.push_back(fe_mul(inv_n, coerce_to_base(ctx, s)));
    }
    return e;
}

}  // namespace

std::unique_ptr<AlgebraContext> algebra_make(const FieldSpec& field, const AbelianGroup& group) {
    if (group.n < 2 || group.n % 2 == 0)
        throw std::invalid_argument("algebra_make: group order must be odd and > 1");
    if (std::gcd(group.n, static_cast<std::uint64_t>(field.q % group.n)) != 1)
        throw std::invalid_argument("algebra_make: gcd(n, q) must be 1");

    auto ctx = std::make_unique<AlgebraContext>();
    ctx->field = field;
    ctx->group = group;
    ctx->orbits = q_orbits(group, field.q);

    u128 dord = multiplicative_order_mod(field.q % group.exponent, group.exponent);
    ctx->d = static_cast<unsigned>(dord);
    ctx->splitting = field_make(field.p, field.m * ctx->d);

    const FieldSpec& K = ctx->splitting;
    FieldElement gK = multiplicative_generator(K);
    ctx->zeta = fe_pow(gK, (K.q - 1) / group.exponent);
    // certify the exact order of zeta
    if (!(fe_pow(ctx->zeta, group.exponent) == fe_one(K)))
        throw std::logic_error("algebra_make: zeta order certification failed");
    for (u128 l : prime_factors(group.exponent)) {
        if (fe_pow(ctx->zeta, group.exponent / static_cast<std::uint64_t>(l)) == fe_one(K))
            throw std::logic_error("algebra_make: zeta order certification failed");
    }
    ctx->zeta_pow.reserve(group.exponent);
    FieldElement zp = fe_one(K);
    for (std::uint64_t k = 0; k < group.exponent; ++k) {
        ctx->zeta_pow.push_back(zp);
        zp = fe_mul(zp, ctx->zeta);
    }

    // subfield data: kernel of beta -> beta^q - beta is the q-element subfield
    const std::uint64_t p = field.p;
    const unsigned m = field.m;
    const unsigned M = K.m;
    PMatrix B(M, std::vector<std::uint64_t>(M, 0));
    for (unsigned j = 0; j < M; ++j) {
        FieldElement basis = fe_zero(K);
        basis.c[j] = 1;
        FieldElement t = fe_sub(fe_pow(basis, field.q), basis);
        for (unsigned i = 0; i < M; ++i) B[i][j] = t.c[i];
    }
    std::vector<std::size_t> pivots = rref(B, p);
    std::vector<bool> is_pivot(M, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<FieldElement> kernel_basis;
    for (unsigned f = 0; f < M; ++f) {
        if (is_pivot[f]) continue;
        FieldElement v = fe_zero(K);
        v.c[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v.c[pivots[r]] = static_cast<std::uint32_t>((p - B[r][f] % p) % p);
        kernel_basis.push_back(v);
    }
    if (kernel_basis.size() != m)
        throw std::logic_error("algebra_make: subfield dimension mismatch");

    // first kernel combination that is a root of the base modulus
    bool found = false;
    for (u128 t = 0; t < field.q && !found; ++t) {
        FieldElement cand = fe_zero(K);
        u128 v = t;
        for (unsigned i = 0; i < m; ++i) {
            std::uint64_t digit = static_cast<std::uint64_t>(v % p);
            v /= p;
            if (digit == 0) continue;
            cand = fe_add(cand, fe_mul(fe_from_int(K, digit), kernel_basis[i]));
        }
        if (splitting_eval_base_modulus(*ctx, cand).is_zero()) {
            FieldElement pow = fe_one(K);
            for (unsigned i = 0; i < m; ++i) {
                ctx->gamma_pow.push_back(pow);
                pow = fe_mul(pow, cand);
            }
            found = true;
        }
    }
    if (!found) throw std::logic_error("algebra_make: base modulus has no root in the subfield");

    ctx->embed_cols.assign(m, {});
    for (unsigned i = 0; i < m; ++i)
        ctx->embed_cols[i].assign(ctx->gamma_pow[i].c.begin(), ctx->gamma_pow[i].c.end());

    // solve matrix T with T * A = I, from the RREF of [A | I]
    PMatrix aug(M, std::vector<std::uint64_t>(m + M, 0));
    for (unsigned i = 0; i < M; ++i) {
        for (unsigned j = 0; j < m; ++j) aug[i][j] = ctx->embed_cols[j][i];
        aug[i][m + i] = 1;
    }
    std::vector<std::size_t> apiv = rref(aug, p);
    for (unsigned i = 0; i < m; ++i) {
        if (i >= apiv.size() || apiv[i] != i)
            throw std::logic_error("algebra_make: embedding matrix is rank-deficient");
        std::vector<std::uint32_t> row(M);
        for (unsigned j = 0; j < M; ++j) row[j] = static_cast<std::uint32_t>(aug[i][m + j]);
        ctx->coerce_rows.push_back(std::move(row));
    }
    return ctx;
}

AlgebraElement ae_zero(const AlgebraContext& ctx) {
    AlgebraElement a;
    a.ctx = &ctx;
    a.c.assign(ctx.group.n, fe_zero(ctx.field));
    return a;
}

AlgebraElement ae_one(const AlgebraContext& ctx) {
    AlgebraElement a = ae_zero(ctx);
    a.c[0] = fe_one(ctx.field);
    return a;
}

AlgebraElement ae_basis(const AlgebraContext& ctx, std::uint64_t i) {
    if (i >= ctx.group.n) throw std::out_of_range("ae_basis: index out of range");
    AlgebraElement a = ae_zero(ctx);
    a.c[i] = fe_one(ctx.field);
    return a;
}

AlgebraElement ae_add(const AlgebraElement& a, const AlgebraElement& b) {
    check_ctx(a, b);
    AlgebraElement r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = fe_add(a.c[i], b.c[i]);
    return r;
}

AlgebraElement ae_sub(const AlgebraElement& a, const AlgebraElement& b) {
    check_ctx(a, b);
    AlgebraElement r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = fe_sub(a.c[i], b.c[i]);
    return r;
}

AlgebraElement ae_neg(const AlgebraElement& a) {
    AlgebraElement r = a;
    for (auto& v : r.c) v = fe_neg(v);
    return r;
}

AlgebraElement ae_scale(const FieldElement& s, const AlgebraElement& a) {
    AlgebraElement r = a;
    for (auto& v : r.c) v = fe_mul(s, v);
    return r;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    check_ctx(a, b);
    const AbelianGroup& G = a.ctx->group;
    AlgebraElement r = ae_zero(*a.ctx);
    for (std::uint64_t x = 0; x < G.n; ++x) {
        if (a.c[x].is_zero()) continue;
        for (std::uint64_t y = 0; y < G.n; ++y) {
            if (b.c[y].is_zero()) continue;
            std::uint64_t z = group_mul(G, x, y);
            r.c[z] = fe_add(r.c[z], fe_mul(a.c[x], b.c[y]));
        }
    }
    return r;
}

AlgebraElement bar(const AlgebraElement& a) {
    AlgebraElement r = a;
    for (std::uint64_t x = 0; x < a.ctx->group.n; ++x) r.c[group_inverse(a.ctx->group, x)] = a.c[x];
    return r;
}

FieldElement sigma(const AlgebraElement& a) { return a.c[0]; }

FieldElement inner(const AlgebraElement& a, const AlgebraElement& b) {
    check_ctx(a, b);
    FieldElement s = fe_zero(a.ctx->field);
    for (std::size_t i = 0; i < a.c.size(); ++i) s = fe_add(s, fe_mul(a.c[i], b.c[i]));
    return s;
}

AlgebraElement ae_pow(const AlgebraElement& a, u128 e, const AlgebraElement& identity) {
    AlgebraElement r = identity;
    AlgebraElement base = a;
    while (e > 0) {
        if (e & 1u) r = multiply(r, base);
        e >>= 1u;
        if (e > 0) base = multiply(base, base);
    }
    return r;
}

Decomposition idempotent_decomposition(const AlgebraContext& ctx) {
    FieldElement inv_n = fe_inv(fe_from_int(ctx.field, ctx.group.n));
    std::vector<AlgebraElement> e_of_orbit(ctx.orbits.orbits.size());
    for (std::size_t o = 0; o < ctx.orbits.orbits.size(); ++o)
        e_of_orbit[o] = orbit_idempotent(ctx, ctx.orbits.orbits[o], inv_n);

    for (const AlgebraElement& e : e_of_orbit) {
        if (!(multiply(e, e) == e)) throw std::logic_error("computed idempotent is not idempotent");
    }

    Decomposition dec;
    Component triv;
    triv.kind = ComponentKind::trivial;
    triv.orbit = 0;
    triv.dim = 1;
    triv.n_e = 0;
    triv.e = e_of_orbit[0];
    triv.ebar = triv.e;
    triv.ehat = triv.e;
    dec.components.push_back(std::move(triv));

    for (std::size_t k = 0; k < ctx.orbits.component_orbits.size(); ++k) {
        std::size_t o = ctx.orbits.component_orbits[k];
        const Orbit& O = ctx.orbits.orbits[o];
        Component comp;
        comp.orbit = o;
        comp.dim = O.members.size();
        comp.n_e = ctx.orbits.component_dims[k];
        comp.e = e_of_orbit[o];
        if (O.tag == OrbitTag::bar_fixed) {
            comp.kind = ComponentKind::bar_fixed;
            comp.ebar = comp.e;
            comp.ehat = comp.e;
        } else {
            comp.kind = ComponentKind::paired;
            comp.partner_orbit = O.partner;
            comp.ebar = e_of_orbit[O.partner];
            comp.ehat = ae_add(comp.e, comp.ebar);
        }
        dec.components.push_back(std::move(comp));
    }
    return dec;
}

u128 component_unit_order(const AlgebraContext& ctx, const Component& comp) {
    if (comp.kind == ComponentKind::trivial) return ctx.field.q - 1;
    return checked_pow(ctx.field.q, static_cast<unsigned>(comp.dim)) - 1;
}

AlgebraElement component_generator(const AlgebraContext& ctx, const Decomposition& dec,
                                   std::size_t comp_index) {
    const Component& comp = dec.components.at(comp_index);
    if (comp.kind == ComponentKind::trivial)
        throw std::invalid_argument("component_generator: trivial component has no generator search");
    if (ctx.field.q > static_cast<u128>(UINT64_MAX))
        throw std::invalid_argument("component_generator: field too large to sample");

    u128 order = component_unit_order(ctx, comp);
    std::vector<u128> primes = prime_factors(order);
    SplitMix64 rng = SplitMix64::substream(0, comp_index);
    std::uint64_t q64 = static_cast<std::uint64_t>(ctx.field.q);
    for (;;) {
        AlgebraElement a;
        a.ctx = &ctx;
        a.c.reserve(ctx.group.n);
        for (std::uint64_t i = 0; i < ctx.group.n; ++i)
            a.c.push_back(fe_from_index(ctx.field, rng.below(q64)));
        AlgebraElement g = multiply(a, comp.e);
        if (!(ae_pow(g, order, comp.e) == comp.e)) continue;
        bool primitive = true;
        for (u128 l : primes) {
            if (ae_pow(g, order / l, comp.e) == comp.e) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
}

}  // namespace qac
