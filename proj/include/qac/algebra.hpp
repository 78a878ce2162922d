#pragma once

#include <memory>
#include <vector>

#include "qac/field.hpp"
#include "qac/group.hpp"

namespace qac {

/// Everything fixed once for a group algebra FG: the base field F_q, the
/// group, its q-orbit structure, a splitting field F_{q^d} with a certified
/// primitive exponent(G)-th root of unity, and the linear data needed to move
/// splitting-field values that lie in the q-element subfield back into base
/// coordinates. Heap-allocated and immutable so elements can hold pointers.
struct AlgebraContext {
    FieldSpec field;     // F_q, q = p^m
    AbelianGroup group;  // order n, odd, gcd(n, q) = 1
    OrbitClassification orbits;
    unsigned d = 1;      // multiplicative order of q mod exponent(G)
    FieldSpec splitting;  // F_{p^{m d}} = F_{q^d}
    FieldElement zeta;    // primitive exponent(G)-th root of unity
    std::vector<FieldElement> zeta_pow;  // ζ^0 .. ζ^{exponent-1}

    // gamma is the canonical root of the base modulus inside the splitting
    // field; gamma_pow[i] = gamma^i for i < m. coerce_rows is the m x (m d)
    // solve matrix over Z_p recovering base coordinates from splitting
    // coordinates; embed_cols are the splitting coordinates of gamma^i.
    std::vector<FieldElement> gamma_pow;
    std::vector<std::vector<std::uint32_t>> embed_cols;
    std::vector<std::vector<std::uint32_t>> coerce_rows;

    AlgebraContext() = default;
    AlgebraContext(const AlgebraContext&) = delete;
    AlgebraContext& operator=(const AlgebraContext&) = delete;
};

/// Requires n odd, n > 1, gcd(n, q) = 1. Fails if the splitting field would
/// exceed the 128-bit exact-arithmetic cap.
std::unique_ptr<AlgebraContext> algebra_make(const FieldSpec& field, const AbelianGroup& group);

/// Element of FG as a coefficient vector over F_q indexed by the group
/// enumeration.
struct AlgebraElement {
    const AlgebraContext* ctx = nullptr;
    std::vector<FieldElement> c;

    bool is_zero() const {
        for (const auto& v : c)
            if (!v.is_zero()) return false;
        return true;
    }
    bool operator==(const AlgebraElement& o) const { return ctx == o.ctx && c == o.c; }
};

AlgebraElement ae_zero(const AlgebraContext& ctx);
AlgebraElement ae_one(const AlgebraContext& ctx);
AlgebraElement ae_basis(const AlgebraContext& ctx, std::uint64_t i);
AlgebraElement ae_add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement ae_sub(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement ae_neg(const AlgebraElement& a);
AlgebraElement ae_scale(const FieldElement& s, const AlgebraElement& a);

/// Group convolution: (ab)_z = sum over xy = z of a_x b_y.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

/// The involution sending each group element to its inverse.
AlgebraElement bar(const AlgebraElement& a);

/// Coefficient at the identity element.
FieldElement sigma(const AlgebraElement& a);

/// Coordinatewise dot product; equals sigma(a * bar(b)).
FieldElement inner(const AlgebraElement& a, const AlgebraElement& b);

/// a^e computed against an explicit identity (the idempotent of the
/// component a lives in, or 1 for the full algebra). a^0 = identity.
AlgebraElement ae_pow(const AlgebraElement& a, u128 e, const AlgebraElement& identity);

enum class ComponentKind { trivial, bar_fixed, paired };

/// One simple component of FG. For a paired couple the lead idempotent e and
/// its bar image are both stored along with ehat = e + bar(e); for the other
/// kinds ebar and ehat alias e. dim is the F_q-dimension of FGe (the lead
/// orbit size); n_e is the counting dimension (0 for the trivial component).
struct Component {
    ComponentKind kind = ComponentKind::trivial;
    std::size_t orbit = 0;
    std::size_t partner_orbit = SIZE_MAX;
    std::uint64_t dim = 0;
    std::uint64_t n_e = 0;
    AlgebraElement e;
    AlgebraElement ebar;
    AlgebraElement ehat;
};

/// Components in canonical order: trivial, bar-fixed orbits ascending, paired
/// leads ascending.
struct Decomposition {
    std::vector<Component> components;
};

/// Primitive idempotents via character-orbit sums over the splitting field.
/// Every coefficient is checked to land in the q-element subfield; violation
/// is an internal failure and throws.
Decomposition idempotent_decomposition(const AlgebraContext& ctx);

/// Order of the unit group of FGe: q^{2 n_e} - 1 for a bar-fixed component,
/// q^{n_e} - 1 for a paired lead.
u128 component_unit_order(const AlgebraContext& ctx, const Component& comp);

/// Certified generator of (FGe)^x: multiplicative order is exactly
/// component_unit_order, verified against the prime factorization. Found by a
/// seeded deterministic search (seed 0, substream = component ordinal).
AlgebraElement component_generator(const AlgebraContext& ctx, const Decomposition& dec,
                                   std::size_t comp_index);

}  // namespace qac
