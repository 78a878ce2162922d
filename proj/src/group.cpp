#include "qac/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qac {

AbelianGroup group_make(const std::vector<std::uint32_t>& factors) {
    if (factors.empty()) throw std::invalid_argument("group_make: empty factor list");
    AbelianGroup G;
    G.factors = factors;
    G.n = 1;
    G.exponent = 1;
    for (std::uint32_t m : factors) {
        if (m < 1) throw std::invalid_argument("group_make: factor must be >= 1");
        G.n *= m;
        G.exponent = std::lcm<std::uint64_t>(G.exponent, m);
    }
    if (G.n < 2) throw std::invalid_argument("group_make: group must have order > 1");
    return G;
}

std::vector<std::uint32_t> group_tuple(const AbelianGroup& G, std::uint64_t i) {
    std::vector<std::uint32_t> t(G.factors.size());
    for (std::size_t k = 0; k < G.factors.size(); ++k) {
        t[k] = static_cast<std::uint32_t>(i % G.factors[k]);
        i /= G.factors[k];
    }
    return t;
}

std::uint64_t group_index(const AbelianGroup& G, const std::vector<std::uint32_t>& tuple) {
    std::uint64_t i = 0;
    for (std::size_t k = G.factors.size(); k-- > 0;) i = i * G.factors[k] + tuple[k];
    return i;
}

std::uint64_t group_mul(const AbelianGroup& G, std::uint64_t i, std::uint64_t j) {
    std::uint64_t out = 0, base = 1;
    for (std::size_t k = 0; k < G.factors.size(); ++k) {
        std::uint64_t m = G.factors[k];
        out += ((i % m) + (j % m)) % m * base;
        base *= m;
        i /= m;
        j /= m;
    }
    return out;
}

std::uint64_t group_inverse(const AbelianGroup& G, std::uint64_t i) {
    std::uint64_t out = 0, base = 1;
    for (std::size_t k = 0; k < G.factors.size(); ++k) {
        std::uint64_t m = G.factors[k];
        out += (m - i % m) % m * base;
        base *= m;
        i /= m;
    }
    return out;
}

std::vector<std::uint64_t> cayley_permutation(const AbelianGroup& G, std::uint64_t i) {
    if (i >= G.n) throw std::out_of_range("cayley_permutation: index out of range");
    std::vector<std::uint64_t> rho(G.n);
    for (std::uint64_t j = 0; j < G.n; ++j) rho[j] = group_mul(G, i, j);
    return rho;
}

namespace {

// i -> q*i componentwise on the tuple group.
std::uint64_t scale_by_q(const AbelianGroup& G, u128 q, std::uint64_t i) {
    std::uint64_t out = 0, base = 1;
    for (std::size_t k = 0; k < G.factors.size(); ++k) {
        std::uint64_t m = G.factors[k];
        std::uint64_t qm = static_cast<std::uint64_t>(q % m);
        out += (i % m) * qm % m * base;
        base *= m;
        i /= m;
    }
    return out;
}

}  // namespace

OrbitClassification q_orbits(const AbelianGroup& G, u128 q) {
    if (std::gcd(G.n, static_cast<std::uint64_t>(q % G.n)) != 1)
        throw std::invalid_argument("q_orbits: gcd(n, q) must be 1");

    OrbitClassification cls;
    std::vector<bool> seen(G.n, false);
    for (std::uint64_t start = 0; start < G.n; ++start) {
        if (seen[start]) continue;
        Orbit O;
        std::uint64_t a = start;
        do {
            seen[a] = true;
            O.members.push_back(a);
            a = scale_by_q(G, q, a);
        } while (a != start);
        std::sort(O.members.begin(), O.members.end());
        cls.orbits.push_back(std::move(O));
    }
    // start indices ascend, so orbits are already ordered by smallest member

    std::vector<std::size_t> orbit_of(G.n);
    for (std::size_t o = 0; o < cls.orbits.size(); ++o)
        for (std::uint64_t a : cls.orbits[o].members) orbit_of[a] = o;

    for (std::size_t o = 0; o < cls.orbits.size(); ++o) {
        Orbit& O = cls.orbits[o];
        if (O.members.size() == 1 && O.members[0] == 0) {
            O.tag = OrbitTag::trivial;
            continue;
        }
        std::size_t neg = orbit_of[group_inverse(G, O.members[0])];
        if (neg == o) {
            O.tag = OrbitTag::bar_fixed;
        } else {
            O.partner = neg;
            O.tag = (o < neg) ? OrbitTag::paired_lead : OrbitTag::paired_partner;
        }
    }

    // canonical component order: bar-fixed orbits, then paired leads
    for (std::size_t o = 0; o < cls.orbits.size(); ++o) {
        if (cls.orbits[o].tag == OrbitTag::bar_fixed) {
            cls.component_orbits.push_back(o);
            cls.component_dims.push_back(cls.orbits[o].members.size() / 2);
            ++cls.r;
        }
    }
    for (std::size_t o = 0; o < cls.orbits.size(); ++o) {
        if (cls.orbits[o].tag == OrbitTag::paired_lead) {
            cls.component_orbits.push_back(o);
            cls.component_dims.push_back(cls.orbits[o].members.size());
            ++cls.s;
        }
    }
    return cls;
}

std::vector<std::vector<std::uint64_t>> cyclotomic_cosets_zn(std::uint64_t n, u128 q) {
    if (n < 2) throw std::invalid_argument("cyclotomic_cosets_zn: n must be > 1");
    std::uint64_t qn = static_cast<std::uint64_t>(q % n);
    if (std::gcd(n, qn) != 1) throw std::invalid_argument("cyclotomic_cosets_zn: gcd(n, q) must be 1");

    std::vector<std::vector<std::uint64_t>> cosets;
    std::vector<bool> seen(n, false);
    for (std::uint64_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<std::uint64_t> coset;
        std::uint64_t a = start;
        do {
            seen[a] = true;
            coset.push_back(a);
            a = a * qn % n;
        } while (a != start);
        std::sort(coset.begin(), coset.end());
        cosets.push_back(std::move(coset));
    }
    return cosets;
}

std::uint64_t mu_q(std::uint64_t n, u128 q) {
    auto cosets = cyclotomic_cosets_zn(n, q);
    std::uint64_t best = n;
    for (std::size_t i = 1; i < cosets.size(); ++i) best = std::min<std::uint64_t>(best, cosets[i].size());
    return best;
}

}  // namespace qac
