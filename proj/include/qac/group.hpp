#pragma once

#include <cstdint>
#include <vector>

#include "qac/uint128.hpp"

namespace qac {

/// Finite abelian group as a product of cyclic factors, with the fixed
/// element enumeration x_0 = 1, x_1, ..., x_{n-1} in mixed-radix order
/// (first factor is the least-significant digit).
struct AbelianGroup {
    std::vector<std::uint32_t> factors;
    std::uint64_t n = 0;         // product of the factors
    std::uint64_t exponent = 0;  // lcm of the factors

    bool operator==(const AbelianGroup& o) const { return factors == o.factors; }
};

AbelianGroup group_make(const std::vector<std::uint32_t>& factors);

std::vector<std::uint32_t> group_tuple(const AbelianGroup& G, std::uint64_t i);
std::uint64_t group_index(const AbelianGroup& G, const std::vector<std::uint32_t>& tuple);
std::uint64_t group_mul(const AbelianGroup& G, std::uint64_t i, std::uint64_t j);
std::uint64_t group_inverse(const AbelianGroup& G, std::uint64_t i);

/// Cayley permutation rho_i with rho_i(j) = index of x_i * x_j; rho_0 is the
/// identity and rho_i(0) = i.
std::vector<std::uint64_t> cayley_permutation(const AbelianGroup& G, std::uint64_t i);

enum class OrbitTag { trivial, bar_fixed, paired_lead, paired_partner };

struct Orbit {
    std::vector<std::uint64_t> members;  // ascending
    OrbitTag tag = OrbitTag::trivial;
    std::size_t partner = SIZE_MAX;  // index of the matching orbit for paired tags
};

/// Orbits of a -> q*a on the index tuple group (isomorphic to G since G is
/// abelian), ordered ascending by smallest member. An orbit is bar-fixed when
/// O = -O; otherwise (O, -O) form a couple whose lead is the orbit with the
/// smaller smallest member. Component dimensions: n_e = |O|/2 for a bar-fixed
/// orbit, n_e = |O| for a paired couple.
struct OrbitClassification {
    std::vector<Orbit> orbits;
    std::size_t r = 0;  // bar-fixed non-trivial orbits
    std::size_t s = 0;  // paired couples

    /// Orbit indices of the components e_1..e_r then the paired leads
    /// ê_{r+1}..ê_{r+s}, in canonical order.
    std::vector<std::size_t> component_orbits;
    /// n_e per entry of component_orbits.
    std::vector<std::uint64_t> component_dims;
};

OrbitClassification q_orbits(const AbelianGroup& G, u128 q);

/// q-cyclotomic cosets of Z_n; the coset {0} comes first, the rest ordered by
/// smallest member.
std::vector<std::vector<std::uint64_t>> cyclotomic_cosets_zn(std::uint64_t n, u128 q);

/// Minimal size of a non-trivial q-cyclotomic coset of Z_n.
std::uint64_t mu_q(std::uint64_t n, u128 q);

}  // namespace qac
