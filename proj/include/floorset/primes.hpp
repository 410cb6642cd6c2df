#pragma once
// Prime generation and classification:
//   - PrimeTable: segmented sieve of Eratosthenes; 1 bit per integer plus an
//     ascending prime list, immutable after construction.
//   - is_prime: deterministic Miller-Rabin for the full 64-bit range.
//   - is_prime_power / von_mangoldt built on top of both.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floorset/intmath.hpp"
#include "floorset/parallel.hpp"

namespace floorset {

struct SieveOptions {
    // Segment length in integers. Must be a multiple of 64 so parallel
    // segments never share a flag word.
    uint64_t segment_size = uint64_t{1} << 20;
    unsigned threads = 1;
};

// Primality flags and the ascending list of primes up to a fixed limit.
// Immutable after construction; safe to share across threads.
class PrimeTable {
public:
    uint64_t limit() const { return limit_; }

    // flags[m]: valid for 0 <= m <= limit.
    bool is_prime(uint64_t m) const {
        if (m > limit_) throw std::out_of_range("PrimeTable::is_prime: m exceeds table limit");
        return (words_[m >> 6] >> (m & 63)) & 1u;
    }

    const std::vector<uint64_t>& primes() const { return primes_; }

    // #{p prime : p <= t} for real t <= limit.
    uint64_t prime_pi(double t) const {
        if (t > static_cast<double>(limit_))
            throw std::out_of_range("PrimeTable::prime_pi: t exceeds table limit");
        if (t < 2.0) return 0;
        uint64_t m = static_cast<uint64_t>(std::floor(t));
        auto it = std::upper_bound(primes_.begin(), primes_.end(), m);
        return static_cast<uint64_t>(it - primes_.begin());
    }

private:
    friend PrimeTable sieve(uint64_t, SieveOptions);

    uint64_t limit_ = 0;
    std::vector<uint64_t> words_;   // bit m set <=> m prime
    std::vector<uint64_t> primes_;
};

// Segmented sieve of Eratosthenes up to `limit` (inclusive).
// The result is identical regardless of segment size or thread count.
inline PrimeTable sieve(uint64_t limit, SieveOptions opts = {}) {
    if (limit < 2) throw std::domain_error("sieve: limit must be >= 2");
    if (opts.segment_size < 64 || opts.segment_size % 64 != 0)
        throw std::invalid_argument("sieve: segment_size must be a positive multiple of 64");

    PrimeTable table;
    table.limit_ = limit;
    uint64_t bits = limit + 1;
    table.words_.assign((bits + 63) / 64, ~uint64_t{0});

    // Base primes up to sqrt(limit) by a plain sieve.
    uint64_t root = isqrt(limit);
    std::vector<uint8_t> base_composite(root + 1, 0);
    std::vector<uint64_t> base_primes;
    for (uint64_t i = 2; i <= root; ++i) {
        if (base_composite[i]) continue;
        base_primes.push_back(i);
        for (uint64_t j = i * i; j <= root; j += i) base_composite[j] = 1;
    }

    uint64_t seg = opts.segment_size;
    uint64_t segments = (bits + seg - 1) / seg;
    uint64_t* words = table.words_.data();

    parallel_for(0, segments, opts.threads, [&](uint64_t si) {
        uint64_t lo = si * seg;                       // first value in segment
        uint64_t hi = std::min(lo + seg, bits);       // one past last value
        for (uint64_t p : base_primes) {
            uint64_t start = p * p;
            if (start >= hi) break;
            if (start < lo) start = ((lo + p - 1) / p) * p;
            for (uint64_t m = start; m < hi; m += p)
                words[m >> 6] &= ~(uint64_t{1} << (m & 63));
        }
    });

    // 0 and 1 are not prime; clear slack bits past the limit.
    words[0] &= ~uint64_t{3};
    if (bits & 63) table.words_.back() &= (uint64_t{1} << (bits & 63)) - 1;

    uint64_t count = 0;
    for (uint64_t w : table.words_) count += static_cast<uint64_t>(std::popcount(w));
    table.primes_.reserve(count);
    for (uint64_t wi = 0; wi < table.words_.size(); ++wi) {
        uint64_t w = table.words_[wi];
        while (w) {
            unsigned b = static_cast<unsigned>(std::countr_zero(w));
            table.primes_.push_back(wi * 64 + b);
            w &= w - 1;
        }
    }
    return table;
}

// Deterministic Miller-Rabin, valid for every n < 2^64.
inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    unsigned s = static_cast<unsigned>(std::countr_zero(n - 1));
    uint64_t d = (n - 1) >> s;
    // Witness set covering all 64-bit integers.
    for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        a %= n;
        if (a == 0) continue;
        uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

struct PrimePower {
    uint64_t prime;
    unsigned exponent;
};

// Decomposes n = p^nu with p prime, nu >= 1; empty otherwise (1 is neither).
// Exact integer root checks throughout; no floating-point classification.
inline std::optional<PrimePower> is_prime_power(uint64_t n) {
    if (n < 2) return std::nullopt;
    // A factor among the trial primes settles the question by division.
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p != 0) continue;
        unsigned nu = 0;
        uint64_t rest = n;
        while (rest % p == 0) {
            rest /= p;
            ++nu;
        }
        if (rest == 1) return PrimePower{p, nu};
        return std::nullopt;
    }
    if (is_prime(n)) return PrimePower{n, 1};
    // Remaining candidates have smallest factor >= 41, so nu <= log_41(2^64) < 12.
    for (unsigned k : {2u, 3u, 5u, 7u, 11u}) {
        uint64_t r = ikrt(n, k);
        if (r < 41) break;
        if (!ipow_eq(r, k, n)) continue;
        if (auto inner = is_prime_power(r))
            return PrimePower{inner->prime, inner->exponent * k};
        return std::nullopt;
    }
    return std::nullopt;
}

// von Mangoldt function: log p on prime powers p^nu, else 0.
inline double von_mangoldt(uint64_t n) {
    auto pp = is_prime_power(n);
    return pp ? std::log(static_cast<double>(pp->prime)) : 0.0;
}

} // namespace floorset
