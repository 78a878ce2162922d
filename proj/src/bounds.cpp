#include "qac/bounds.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qac/group.hpp"

namespace qac {

long double q_entropy(std::uint64_t q, long double delta) {
    if (q < 2) throw std::invalid_argument("q_entropy: q must be at least 2");
    long double top = 1.0L - 1.0L / static_cast<long double>(q);
    if (!(delta >= 0.0L) || delta > top)
        throw std::domain_error("q_entropy: delta outside [0, 1-1/q]");
    if (delta == 0.0L) return 0.0L;
    long double lq = std::log(static_cast<long double>(q));
    long double h = delta * std::log(static_cast<long double>(q - 1)) / lq -
                    delta * std::log(delta) / lq;
    long double rest = 1.0L - delta;
    if (rest > 0.0L) h -= rest * std::log(rest) / lq;
    return h;
}

namespace {

BoundReport bound_report(std::uint64_t q, std::uint64_t n, long double delta, bool dagger) {
    if (n < 2) throw std::invalid_argument("bound: n must be at least 2");
    if (std::gcd(n, q) != 1) throw std::invalid_argument("bound: n must be coprime to q");
    BoundReport r;
    r.q = q;
    r.n = n;
    r.delta = delta;
    r.dagger = dagger;
    r.h = q_entropy(q, delta);
    r.mu = mu_q(n, q);
    long double logq_n = std::log(static_cast<long double>(n)) /
                         std::log(static_cast<long double>(q));
    long double mu = static_cast<long double>(r.mu);
    r.margin = 0.25L - r.h - logq_n / (2.0L * mu);
    r.applicable = r.margin > 0.0L;
    if (!r.applicable) {
        long double nan = std::numeric_limits<long double>::quiet_NaN();
        r.dle_exponent = r.ratio_exponent = r.dagger_ratio_exponent = nan;
        return r;
    }
    long double inner = 0.25L - r.h - logq_n / mu;
    r.dle_exponent =
        static_cast<long double>(n - 1) / 2.0L - 2.0L * mu * inner + (dagger ? 2.0L : 4.0L);
    r.ratio_exponent = -2.0L * mu * inner + (dagger ? 4.0L : 6.0L);
    r.dagger_ratio_exponent = -2.0L * mu * inner + 4.0L;
    return r;
}

}  // namespace

BoundReport dle_bound(std::uint64_t q, std::uint64_t n, long double delta, bool dagger) {
    return bound_report(q, n, delta, dagger);
}

BoundReport ratio_bound(std::uint64_t q, std::uint64_t n, long double delta, bool dagger) {
    return bound_report(q, n, delta, dagger);
}

std::vector<ScanEntry> good_sequence_scan(std::uint64_t q, std::uint64_t n_max) {
    if (q < 2) throw std::invalid_argument("good_sequence_scan: q must be at least 2");
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = 3; n <= n_max; n += 2)
        if (std::gcd(n, q) == 1) ns.push_back(n);
    std::vector<ScanEntry> out(ns.size());
    long double lq = std::log(static_cast<long double>(q));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ns.size()) return;
            std::uint64_t n = ns[i];
            std::uint64_t mu = mu_q(n, q);
            out[i] = {n, mu,
                      std::log(static_cast<long double>(n)) / lq / static_cast<long double>(mu)};
        }
    };
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > 8) workers = 8;
    if (workers <= 1 || ns.size() < 128) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    std::sort(out.begin(), out.end(), [](const ScanEntry& a, const ScanEntry& b) {
        if (a.ratio != b.ratio) return a.ratio < b.ratio;
        return a.n < b.n;
    });
    return out;
}

std::pair<bool, bool> product_inequality_check(std::uint64_t q, const std::vector<unsigned>& ks) {
    if (q < 2) throw std::invalid_argument("product_inequality_check: q must be at least 2");
    u128 m = ks.size();
    unsigned sum = 0;
    for (unsigned k : ks) {
        if (checked_pow(q, k) < m)
            throw std::invalid_argument("product_inequality_check: k below log_q(m)");
        sum += k;
    }
    u128 lo = 1, hi = 1;
    for (unsigned k : ks) {
        u128 pk = checked_pow(q, k);
        lo = checked_mul(lo, pk - 1);
        hi = checked_mul(hi, checked_add(pk, 1));
    }
    u128 q2 = checked_mul(q, q);
    u128 qsum = checked_pow(q, sum);
    // prod(q^k - 1) >= q^{sum-2}  <=>  prod * q^2 >= q^sum
    bool lower = checked_mul(lo, q2) >= qsum;
    // prod(q^k + 1) <= q^{sum+2}
    bool upper = hi <= checked_mul(qsum, q2);
    return {lower, upper};
}

namespace {

std::string fmt_ld(long double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12Lg", v);
    return buf;
}

std::string fmt_bound(long double v, bool applicable) {
    return applicable ? fmt_ld(v) : std::string("na");
}

}  // namespace

std::string bound_csv_header() {
    return "q,n,delta,mu,h,margin,dle_exponent,ratio_exponent,dagger_ratio_exponent,applicable";
}

std::string bound_csv_row(const BoundReport& r) {
    std::string row;
    row += std::to_string(r.q) + ',' + std::to_string(r.n) + ',';
    row += fmt_ld(r.delta) + ',' + std::to_string(r.mu) + ',';
    row += fmt_ld(r.h) + ',' + fmt_ld(r.margin) + ',';
    row += fmt_bound(r.dle_exponent, r.applicable) + ',';
    row += fmt_bound(r.ratio_exponent, r.applicable) + ',';
    row += fmt_bound(r.dagger_ratio_exponent, r.applicable) + ',';
    row += r.applicable ? "true" : "false";
    return row;
}

std::string bound_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["n"] = r.n;
    j["delta"] = static_cast<double>(r.delta);
    j["mu"] = r.mu;
    j["h"] = static_cast<double>(r.h);
    j["margin"] = static_cast<double>(r.margin);
    if (r.applicable) {
        j["dle_exponent"] = static_cast<double>(r.dle_exponent);
        j["ratio_exponent"] = static_cast<double>(r.ratio_exponent);
        j["dagger_ratio_exponent"] = static_cast<double>(r.dagger_ratio_exponent);
    } else {
        j["dle_exponent"] = nullptr;
        j["ratio_exponent"] = nullptr;
        j["dagger_ratio_exponent"] = nullptr;
    }
    j["dagger"] = r.dagger;
    j["applicable"] = r.applicable;
    return j.dump();
}

}  // namespace qac
