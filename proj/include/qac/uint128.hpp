#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qac {

// All exact exponent/counting arithmetic runs in unsigned 128-bit integers.
// Parameters that would push values past 2^128-1 are rejected up front.
using u128 = unsigned __int128;

inline std::string to_decimal(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

inline u128 parse_u128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_u128: empty string");
    u128 v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("parse_u128: non-digit in \"" + s + "\"");
        u128 next = v * 10 + static_cast<unsigned>(ch - '0');
        if (next / 10 != v) throw std::overflow_error("parse_u128: value exceeds 128 bits");
        v = next;
    }
    return v;
}

inline u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > static_cast<u128>(-1) / a)
        throw std::overflow_error("u128 multiplication overflow");
    return a * b;
}

inline u128 checked_add(u128 a, u128 b) {
    if (b > static_cast<u128>(-1) - a)
        throw std::overflow_error("u128 addition overflow");
    return a + b;
}

// a^e with overflow detection.
inline u128 checked_pow(u128 a, unsigned e) {
    u128 r = 1;
    while (e > 0) {
        if (e & 1u) r = checked_mul(r, a);
        e >>= 1u;
        if (e > 0) a = checked_mul(a, a);
    }
    return r;
}

// (a * b) mod m without overflow; m may use the full 128 bits.
inline u128 mulmod(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    if (a == 0 || b <= static_cast<u128>(-1) / a) return (a * b) % m;
    u128 r = 0;
    while (b > 0) {
        if (b & 1u) {
            r = (r >= m - a) ? r - (m - a) : r + a;
        }
        b >>= 1u;
        if (b > 0) a = (a >= m - a) ? a - (m - a) : a + a;
    }
    return r;
}

inline u128 powmod(u128 a, u128 e, u128 m) {
    u128 r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1u) r = mulmod(r, a, m);
        e >>= 1u;
        a = mulmod(a, a, m);
    }
    return r;
}

}  // namespace qac
