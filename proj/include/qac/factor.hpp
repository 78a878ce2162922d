#pragma once

#include <cstdint>
#include <vector>

#include "qac/uint128.hpp"

namespace qac {

/// Raised when trial division plus the Pollard rho budget cannot finish a factorization.
struct FactorizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime(u128 n);

/// Distinct prime factors of n, ascending. Trial division to 10^6, then
/// Pollard rho with a fixed iteration budget; throws FactorizationError if
/// the budget runs out (deterministic failure, never a wrong answer).
std::vector<u128> prime_factors(u128 n);

/// Multiplicative order of a modulo n (gcd(a,n)=1 required).
u128 multiplicative_order_mod(u128 a, u128 n);

}  // namespace qac
