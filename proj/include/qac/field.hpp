#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qac/uint128.hpp"

namespace qac {

/// Description of F_{p^m} with a fixed monic irreducible modulus of degree m.
///
/// The modulus is the lowest monic irreducible in enumeration order (constant
/// coefficient is the least-significant digit), so a given (p, m) always names
/// the same field representation. Exponent arithmetic is exact in unsigned
/// 128-bit integers; parameters with p^m >= 2^127 are rejected.
struct FieldSpec {
    std::uint64_t p = 0;                 // prime characteristic
    unsigned m = 0;                      // extension degree
    u128 q = 0;                          // p^m
    std::vector<std::uint32_t> modulus;  // length m+1, monic: modulus[m] == 1

    bool operator==(const FieldSpec& o) const { return p == o.p && m == o.m && modulus == o.modulus; }
};

/// Element of F_{p^m} as a coefficient vector in the polynomial basis,
/// constant term first. Immutable value type; all ops are pure.
struct FieldElement {
    const FieldSpec* field = nullptr;
    std::vector<std::uint32_t> c;  // length m, entries in [0, p)

    bool is_zero() const {
        for (auto v : c)
            if (v != 0) return false;
        return true;
    }
    bool operator==(const FieldElement& o) const;
};

FieldSpec field_make(std::uint64_t p, unsigned m);

FieldElement fe_zero(const FieldSpec& F);
FieldElement fe_one(const FieldSpec& F);
/// Element with index k in the canonical enumeration: digits of k base p,
/// constant coefficient = k mod p. Index 0 is zero, 1 is one.
FieldElement fe_from_index(const FieldSpec& F, u128 k);
u128 fe_index(const FieldElement& a);
/// Scalar c*1 for c in the prime subfield.
FieldElement fe_from_int(const FieldSpec& F, std::uint64_t v);
/// The residue class of x (zero for m == 1, where the modulus is x itself).
FieldElement fe_generator_candidate(const FieldSpec& F);

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_neg(const FieldElement& a);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
FieldElement fe_inv(const FieldElement& a);
FieldElement fe_pow(const FieldElement& a, u128 e);

/// a^(p^k): the k-th iterate of the p-power Frobenius.
FieldElement frobenius(const FieldElement& a, unsigned k);

/// Smallest element in enumeration order with multiplicative order exactly
/// q-1, certified against the prime factorization of q-1.
FieldElement multiplicative_generator(const FieldSpec& F);

/// A root of X^2 = -1 when one exists (q even, or q = 1 mod 4), else empty.
std::optional<FieldElement> sqrt_minus_one(const FieldSpec& F);

bool poly_is_irreducible(std::uint64_t p, const std::vector<std::uint32_t>& f);

/// The field of the given order, factored as p^m. Throws unless q is a
/// prime power.
FieldSpec field_from_order(u128 q);

}  // namespace qac
