#include "qac/field.hpp"

#include <algorithm>
#include <cassert>

#include "qac/factor.hpp"

namespace qac {

namespace {

using Poly = std::vector<std::uint32_t>;  // dense, constant term first

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// c = a*b mod f over Z_p, deg a, deg b < deg f.
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::size_t m = f.size() - 1;
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
        }
    }
    // reduce by the monic modulus
    for (std::size_t d = acc.size(); d-- > m;) {
        std::uint64_t lead = acc[d];
        if (lead == 0) continue;
        acc[d] = 0;
        for (std::size_t j = 0; j < m; ++j) {
            std::uint64_t sub = (lead * f[j]) % p;
            acc[d - m + j] = (acc[d - m + j] + p - sub) % p;
        }
    }
    std::size_t len = std::min(acc.size(), m);
    Poly out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = static_cast<std::uint32_t>(acc[i]);
    poly_trim(out);
    return out;
}

Poly poly_powmod(Poly base, u128 e, const Poly& f, std::uint64_t p) {
    Poly r = {1};
    while (e > 0) {
        if (e & 1u) r = poly_mulmod(r, base, f, p);
        e >>= 1u;
        if (e > 0) base = poly_mulmod(base, base, f, p);
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // a mod b, with b made monic on the fly
        std::uint64_t inv_lead = 1;
        {
            // inverse of b's leading coefficient mod p (p prime)
            std::uint64_t x = b.back(), e = p - 2, r = 1;
            while (e > 0) {
                if (e & 1u) r = (r * x) % p;
                x = (x * x) % p;
                e >>= 1u;
            }
            inv_lead = r;
        }
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t coef = (static_cast<std::uint64_t>(a.back()) * inv_lead) % p;
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t sub = (coef * b[i]) % p;
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
            }
            poly_trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field == b.field) return;
    if (a.field == nullptr || b.field == nullptr || !(*a.field == *b.field))
        throw std::invalid_argument("field elements belong to different fields");
}

}  // namespace

bool FieldElement::operator==(const FieldElement& o) const {
    if (field != o.field && (field == nullptr || o.field == nullptr || !(*field == *o.field))) return false;
    return c == o.c;
}

bool poly_is_irreducible(std::uint64_t p, const Poly& f) {
    unsigned m = static_cast<unsigned>(f.size() - 1);
    if (m == 0) return false;
    if (f.back() != 1) throw std::invalid_argument("poly_is_irreducible: modulus must be monic");
    if (m == 1) return true;
    // Rabin: x^(p^m) == x mod f, and gcd(x^(p^(m/l)) - x, f) == 1 for prime l | m.
    Poly x = {0, 1};
    Poly xq = poly_powmod(x, checked_pow(p, m), f, p);
    Poly diff = xq;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    poly_trim(diff);
    if (!diff.empty()) return false;
    for (u128 l : prime_factors(m)) {
        unsigned k = m / static_cast<unsigned>(l);
        Poly xk = poly_powmod(x, checked_pow(p, k), f, p);
        Poly d = xk;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = static_cast<std::uint32_t>((d[1] + p - 1) % p);
        poly_trim(d);
        Poly g = poly_gcd(d, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

FieldSpec field_make(std::uint64_t p, unsigned m) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("field_make: p must be prime");
    if (m < 1) throw std::invalid_argument("field_make: m must be >= 1");
    if (p >= (1ull << 31)) throw std::invalid_argument("field_make: characteristic too large");
    FieldSpec F;
    F.p = p;
    F.m = m;
    F.q = checked_pow(p, m);
    if (F.q >= (static_cast<u128>(1) << 127)) throw std::overflow_error("field_make: p^m exceeds the 128-bit cap");
    // lowest monic irreducible: scan constants-first enumeration
    u128 count = F.q;
    for (u128 k = 0; k < count; ++k) {
        Poly f(m + 1, 0);
        u128 v = k;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        f[m] = 1;
        if (poly_is_irreducible(p, f)) {
            F.modulus = f;
            return F;
        }
    }
    throw std::logic_error("field_make: no irreducible polynomial found");  // unreachable
}

FieldElement fe_zero(const FieldSpec& F) { return FieldElement{&F, Poly(F.m, 0)}; }

FieldElement fe_one(const FieldSpec& F) {
    FieldElement e = fe_zero(F);
    e.c[0] = 1 % static_cast<std::uint32_t>(F.p);
    return e;
}

FieldElement fe_from_index(const FieldSpec& F, u128 k) {
    if (k >= F.q) throw std::out_of_range("fe_from_index: index out of range");
    FieldElement e = fe_zero(F);
    for (unsigned i = 0; i < F.m && k > 0; ++i) {
        e.c[i] = static_cast<std::uint32_t>(k % F.p);
        k /= F.p;
    }
    return e;
}

u128 fe_index(const FieldElement& a) {
    u128 k = 0;
    for (unsigned i = a.field->m; i-- > 0;) k = k * a.field->p + a.c[i];
    return k;
}

FieldElement fe_from_int(const FieldSpec& F, std::uint64_t v) {
    FieldElement e = fe_zero(F);
    e.c[0] = static_cast<std::uint32_t>(v % F.p);
    return e;
}

FieldElement fe_generator_candidate(const FieldSpec& F) {
    FieldElement e = fe_zero(F);
    if (F.m > 1) e.c[1] = 1;
    return e;
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    FieldElement r = a;
    for (unsigned i = 0; i < a.field->m; ++i)
        r.c[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.c[i]) + b.c[i]) % a.field->p);
    return r;
}

FieldElement fe_sub(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    FieldElement r = a;
    for (unsigned i = 0; i < a.field->m; ++i)
        r.c[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.c[i]) + a.field->p - b.c[i]) % a.field->p);
    return r;
}

FieldElement fe_neg(const FieldElement& a) {
    FieldElement r = a;
    for (unsigned i = 0; i < a.field->m; ++i)
        r.c[i] = static_cast<std::uint32_t>((a.field->p - a.c[i]) % a.field->p);
    return r;
}

FieldElement fe_mul(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    Poly pa(a.c.begin(), a.c.end());
    Poly pb(b.c.begin(), b.c.end());
    poly_trim(pa);
    poly_trim(pb);
    Poly pr = poly_mulmod(pa, pb, a.field->modulus, a.field->p);
    FieldElement r = fe_zero(*a.field);
    for (std::size_t i = 0; i < pr.size(); ++i) r.c[i] = pr[i];
    return r;
}

FieldElement fe_pow(const FieldElement& a, u128 e) {
    FieldElement r = fe_one(*a.field);
    FieldElement base = a;
    while (e > 0) {
        if (e & 1u) r = fe_mul(r, base);
        e >>= 1u;
        if (e > 0) base = fe_mul(base, base);
    }
    return r;
}

FieldElement fe_inv(const FieldElement& a) {
    if (a.is_zero()) throw std::domain_error("fe_inv: inversion of zero");
    return fe_pow(a, a.field->q - 2);
}

FieldElement frobenius(const FieldElement& a, unsigned k) {
    FieldElement r = a;
    for (unsigned i = 0; i < k; ++i) r = fe_pow(r, a.field->p);
    return r;
}

FieldElement multiplicative_generator(const FieldSpec& F) {
    if (F.q == 2) return fe_one(F);
    std::vector<u128> primes = prime_factors(F.q - 1);
    for (u128 k = 1; k < F.q; ++k) {
        FieldElement g = fe_from_index(F, k);
        bool ok = true;
        for (u128 l : primes) {
            if (fe_pow(g, (F.q - 1) / l) == fe_one(F)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            assert(fe_pow(g, F.q - 1) == fe_one(F));
            return g;
        }
    }
    throw std::logic_error("multiplicative_generator: none found");  // unreachable for a field
}

std::optional<FieldElement> sqrt_minus_one(const FieldSpec& F) {
    if (F.p == 2) return fe_one(F);
    if ((F.q - 1) % 4 == 0) {
        FieldElement g = multiplicative_generator(F);
        return fe_pow(g, (F.q - 1) / 4);
    }
    return std::nullopt;
}

FieldSpec field_from_order(u128 q) {
    if (q < 2) throw std::invalid_argument("field_from_order: order must be at least 2");
    std::vector<u128> ps = prime_factors(q);
    if (ps.size() != 1) throw std::invalid_argument("field_from_order: order is not a prime power");
    u128 p = ps[0];
    unsigned m = 0;
    for (u128 t = q; t > 1; t /= p) ++m;
    return field_make(static_cast<std::uint64_t>(p), m);
}

}  // namespace qac
