#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qac/uint128.hpp"

namespace qac {

/// h_q(delta) = delta log_q(q-1) - delta log_q delta - (1-delta) log_q(1-delta)
/// on [0, 1-1/q], with h_q(0) = 0 by continuity. Throws outside the domain.
long double q_entropy(std::uint64_t q, long double delta);

/// Counting bounds at one parameter point. Exponents are the contract
/// (values q^exponent overflow doubles quickly); they are NaN whenever
/// applicable is false. The hypothesis is margin > 0 with
/// margin = 1/4 - h - log_q(n)/(2 mu); the exponents use the /mu variant:
///   dle_exponent          = (n-1)/2 - 2 mu (1/4 - h - log_q(n)/mu) + 4 (dagger: +2)
///   ratio_exponent        =         - 2 mu (1/4 - h - log_q(n)/mu) + 6 (dagger: +4)
///   dagger_ratio_exponent =         - 2 mu (1/4 - h - log_q(n)/mu) + 4
struct BoundReport {
    std::uint64_t q = 0;
    std::uint64_t n = 0;
    long double delta = 0;
    std::uint64_t mu = 0;
    long double h = 0;
    long double margin = 0;
    long double dle_exponent = 0;
    long double ratio_exponent = 0;
    long double dagger_ratio_exponent = 0;
    bool dagger = false;
    bool applicable = false;
};

/// Upper bound on |D^{<=delta}| (dagger: on |(D+)^{<=delta}|).
BoundReport dle_bound(std::uint64_t q, std::uint64_t n, long double delta, bool dagger = false);

/// Upper bound on |D^{<=delta}| / |D| (dagger: the dagger ratio).
BoundReport ratio_bound(std::uint64_t q, std::uint64_t n, long double delta, bool dagger = false);

struct ScanEntry {
    std::uint64_t n = 0;
    std::uint64_t mu = 0;
    long double ratio = 0;  // log_q(n) / mu_q(n)
};

/// All odd n in [3, n_max] coprime to q, ranked ascending by log_q(n)/mu_q(n)
/// (tie: smaller n first). Small ratios mark candidates for good sequences.
std::vector<ScanEntry> good_sequence_scan(std::uint64_t q, std::uint64_t n_max);

/// Exact-integer check of prod(q^{k_i}-1) >= q^{sum k - 2} and
/// prod(q^{k_i}+1) <= q^{sum k + 2}. Requires q^{k_i} >= (number of factors).
std::pair<bool, bool> product_inequality_check(std::uint64_t q, const std::vector<unsigned>& ks);

std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& r);
std::string bound_json(const BoundReport& r);

}  // namespace qac
