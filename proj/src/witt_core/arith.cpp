#include "wittlift/arith.hpp"

namespace wl {

std::optional<i64> invmod(i64 a, i64 n) {
    i64 t = 0, nt = 1, r = n, nr = mod(a, n);
    while (nr != 0) {
        i64 q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) return std::nullopt;
    return mod(t, n);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<std::pair<i64, int>> prime_power(i64 n) {
    if (n < 2) return std::nullopt;
    i64 p = 2;
    while (n % p != 0) ++p;
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    if (n != 1) return std::nullopt;
    return std::make_pair(p, k);
}

int valuation(i64 x, i64 p, int k) {
    if (x == 0) return k;
    int v = 0;
    while (v < k && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

i64 binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    i64 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<int> digits(i64 b, i64 p) {
    std::vector<int> out;
    if (b == 0) out.push_back(0);
    while (b > 0) {
        out.push_back(static_cast<int>(b % p));
        b /= p;
    }
    return out;
}

i64 teichmuller_int(i64 a, i64 p, int k) {
    i64 n = ipow(p, k);
    i64 x = mod(a, n);
    for (int i = 0; i < k; ++i) x = powmod(x, static_cast<std::uint64_t>(p), n);
    return x;
}

}  // namespace wl
