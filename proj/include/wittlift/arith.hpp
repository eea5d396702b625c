#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace wl {

using i64 = std::int64_t;

inline i64 mod(i64 x, i64 n) {
    i64 r = x % n;
    return r < 0 ? r + n : r;
}

inline i64 mulmod(i64 a, i64 b, i64 n) {
    return static_cast<i64>((static_cast<__int128>(a) * b) % n);
}

inline i64 powmod(i64 a, std::uint64_t e, i64 n) {
    i64 r = 1 % n;
    a = mod(a, n);
    while (e) {
        if (e & 1) r = mulmod(r, a, n);
        a = mulmod(a, a, n);
        e >>= 1;
    }
    return r;
}

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Inverse of a modulo n, if gcd(a, n) = 1.
std::optional<i64> invmod(i64 a, i64 n);

bool is_prime(i64 n);

// If n = p^k with p prime, returns (p, k).
std::optional<std::pair<i64, int>> prime_power(i64 n);

// p-adic valuation of x modulo p^k (k if x == 0).
int valuation(i64 x, i64 p, int k);

i64 binomial(int n, int k);

// Base-p digits of b, least significant first.
std::vector<int> digits(i64 b, i64 p);

// Teichmuller representative of a in Z/p^k: the unique root of x^p = x reducing to a.
i64 teichmuller_int(i64 a, i64 p, int k);

}  // namespace wl
