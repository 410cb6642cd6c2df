#pragma once
// Exact integer helpers shared by the sieve, primality and block code.

#include <cmath>
#include <cstdint>

namespace floorset {

// floor(sqrt(n)), exact for all 64-bit n.
inline uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    if (r > 0xFFFFFFFFull) r = 0xFFFFFFFFull;
    while (r * r > n) --r;
    while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

// r^k <= n, evaluated without overflow.
inline bool ipow_le(uint64_t r, unsigned k, uint64_t n) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= r;
        if (acc > n) return false;
    }
    return true;
}

// r^k == n, evaluated without overflow.
inline bool ipow_eq(uint64_t r, unsigned k, uint64_t n) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= r;
        if (acc > n) return false;
    }
    return acc == n;
}

// floor(n^(1/k)), exact; the float guess is corrected by integer checks.
inline uint64_t ikrt(uint64_t n, unsigned k) {
    if (n == 0 || k == 1) return n;
    uint64_t r = static_cast<uint64_t>(std::pow(static_cast<double>(n), 1.0 / k)) + 2;
    while (r > 0 && !ipow_le(r, k, n)) --r;
    return r;
}

namespace detail {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

} // namespace detail
} // namespace floorset
