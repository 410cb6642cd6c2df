#pragma once
// Weighted sawtooth sums over a divisor range:
//   sum_{D < d <= D'} w(d) * psi(x/(d+delta)),  psi(t) = t - [t] - 1/2,
// with w one of Lambda, (log p)*1_P, 1_P, 1_Power. These drive the error
// terms of the S_f asymptotics; the proven envelope for the Lambda and
// log-prime weights is (x^2 D^7)^{1/12} (up to x^eps, dropped here).
//
// psi arguments are evaluated exactly: psi(x/m) = (x mod m)/m - 1/2.
// Terms are added in ascending d with compensated summation, so results are
// byte-reproducible.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "floorset/intmath.hpp"
#include "floorset/primes.hpp"
#include "floorset/summation.hpp"

namespace floorset {

// psi(t) = t - [t] - 1/2, in [-1/2, 1/2); equals -1/2 at integers.
inline double sawtooth(double t) { return t - std::floor(t) - 0.5; }

// psi(x/m) without forming the quotient in floating point.
inline double sawtooth_quotient(uint64_t x, uint64_t m) {
    return static_cast<double>(x % m) / static_cast<double>(m) - 0.5;
}

enum class PsiWeight { lambda, log_prime, prime, prime_power };

constexpr const char* psi_weight_name(PsiWeight w) {
    switch (w) {
        case PsiWeight::lambda:      return "lambda";
        case PsiWeight::log_prime:   return "log-prime";
        case PsiWeight::prime:       return "prime";
        case PsiWeight::prime_power: return "prime-power";
    }
    return "?";
}

struct PsiSumResult {
    uint64_t x = 0;
    uint64_t d_lo = 0;      // sum over d in (d_lo, d_hi]
    uint64_t d_hi = 0;
    int delta = 0;
    PsiWeight weight = PsiWeight::lambda;
    double value = 0.0;
    uint64_t term_count = 0;  // terms with nonzero weight
    double envelope = 0.0;    // comparison scale; see sawtooth_sum/remainder_sum
    double ratio = 0.0;       // |value| / envelope
    double error_bound = 0.0; // compensated-summation rounding bound
};

namespace detail {

// Calls term(d, w) for every d in (lo, hi] with nonzero weight, in ascending
// order. Primality comes from a segmented sieve over the range; higher prime
// powers are enumerated from the base primes and merged in.
template <class Term>
void for_each_psi_weight(uint64_t lo, uint64_t hi, PsiWeight weight, Term term) {
    if (hi <= lo) return;
    uint64_t root = isqrt(hi);
    std::vector<uint64_t> base_primes;
    {
        std::vector<uint8_t> composite(root + 1, 0);
        for (uint64_t i = 2; i <= root; ++i) {
            if (composite[i]) continue;
            base_primes.push_back(i);
            for (uint64_t j = i * i; j <= root; j += i) composite[j] = 1;
        }
    }

    bool want_powers = weight == PsiWeight::lambda || weight == PsiWeight::prime_power;
    std::vector<std::pair<uint64_t, double>> powers;  // (p^nu, log p), nu >= 2
    if (want_powers) {
        for (uint64_t p : base_primes) {
            if (p > hi / p) break;
            double logp = std::log(static_cast<double>(p));
            for (uint64_t v = p * p;; v *= p) {
                if (v > lo) powers.emplace_back(v, logp);
                if (v > hi / p) break;
            }
        }
        std::sort(powers.begin(), powers.end());
    }

    bool log_weight = weight == PsiWeight::lambda || weight == PsiWeight::log_prime;
    constexpr uint64_t chunk = uint64_t{1} << 20;
    std::vector<uint8_t> composite;
    size_t next_power = 0;

    for (uint64_t clo = lo + 1; clo <= hi; clo += chunk) {
        uint64_t chi = std::min(hi, clo + chunk - 1);  // inclusive
        composite.assign(chi - clo + 1, 0);
        for (uint64_t p : base_primes) {
            uint64_t start = p * p;
            if (start > chi) break;
            if (start < clo) start = ((clo + p - 1) / p) * p;
            for (uint64_t m = start; m <= chi; m += p) composite[m - clo] = 1;
        }
        for (uint64_t d = clo; d <= chi; ++d) {
            while (next_power < powers.size() && powers[next_power].first < d) {
                const auto& [v, logp] = powers[next_power];
                term(v, weight == PsiWeight::lambda ? logp : 1.0);
                ++next_power;
            }
            if (d >= 2 && !composite[d - clo])
                term(d, log_weight ? std::log(static_cast<double>(d)) : 1.0);
        }
    }
    while (next_power < powers.size()) {
        const auto& [v, logp] = powers[next_power];
        term(v, weight == PsiWeight::lambda ? logp : 1.0);
        ++next_power;
    }
}

inline PsiSumResult psi_sum_over(uint64_t x, uint64_t lo, uint64_t hi, int delta, PsiWeight weight) {
    PsiSumResult r;
    r.x = x;
    r.d_lo = lo;
    r.d_hi = hi;
    r.delta = delta;
    r.weight = weight;

    NeumaierSum sum;
    uint64_t count = 0;
    for_each_psi_weight(lo, hi, weight, [&](uint64_t d, double w) {
        double t = sawtooth_quotient(x, d + static_cast<uint64_t>(delta));
        assert(t >= -0.5 && t < 0.5);
        sum.add(w * t);
        ++count;
    });
    r.value = sum.value();
    r.term_count = count;
    r.error_bound = sum.error_bound();
    return r;
}

} // namespace detail

constexpr uint64_t psi_sum_max_hi = 1'000'000'000;

// frak-S sum over (d_lo, d_hi]; envelope is the proven (x^2 d_lo^7)^{1/12}.
inline PsiSumResult sawtooth_sum(uint64_t x, uint64_t d_lo, uint64_t d_hi, int delta, PsiWeight weight) {
    if (d_lo < 1 || d_lo >= d_hi || d_hi > x)
        throw std::domain_error("sawtooth_sum: need 1 <= D < D' <= x");
    if (d_hi > psi_sum_max_hi)
        throw std::domain_error("sawtooth_sum: D' exceeds the direct-summation budget of 1e9");
    if (delta != 0 && delta != 1) throw std::domain_error("sawtooth_sum: delta must be 0 or 1");

    PsiSumResult r = detail::psi_sum_over(x, d_lo, d_hi, delta, weight);
    r.envelope = std::exp((2.0 * std::log(static_cast<double>(x)) +
                           7.0 * std::log(static_cast<double>(d_lo))) / 12.0);
    r.ratio = std::abs(r.value) / r.envelope;
    return r;
}

// Remainder sum over (N, x/N], the paper window N in [x^{1/3}, sqrt x].
// The reported envelope is the target scale N itself.
inline PsiSumResult remainder_sum(uint64_t x, uint64_t n_param, int delta, PsiWeight weight) {
    if (x < 1) throw std::domain_error("remainder_sum: x must be >= 1");
    if (delta != 0 && delta != 1) throw std::domain_error("remainder_sum: delta must be 0 or 1");
    unsigned __int128 n3 = static_cast<unsigned __int128>(n_param) * n_param * n_param;
    bool above_cbrt = n3 >= x;
    bool below_sqrt = static_cast<unsigned __int128>(n_param) * n_param <= x;
    if (n_param < 1 || !above_cbrt || !below_sqrt)
        throw std::domain_error("remainder_sum: N must lie in [x^(1/3), sqrt x]");

    uint64_t hi = x / n_param;
    if (hi > 4 * psi_sum_max_hi)
        throw std::domain_error("remainder_sum: range (N, x/N] exceeds the direct-summation budget");

    PsiSumResult r = hi > n_param
                         ? detail::psi_sum_over(x, n_param, hi, delta, weight)
                         : PsiSumResult{x, n_param, hi, delta, weight, 0.0, 0, 0.0, 0.0, 0.0};
    r.d_lo = n_param;
    r.d_hi = hi;
    r.envelope = static_cast<double>(n_param);
    r.ratio = std::abs(r.value) / r.envelope;
    return r;
}

// Reference evaluation with an arbitrary weight functor; one plain loop.
// Used by tests and property checks.
template <class F>
double sawtooth_sum_with(uint64_t x, uint64_t d_lo, uint64_t d_hi, int delta, F weight) {
    NeumaierSum sum;
    for (uint64_t d = d_lo + 1; d <= d_hi; ++d) {
        double w = weight(d);
        if (w != 0.0) sum.add(w * sawtooth_quotient(x, d + static_cast<uint64_t>(delta)));
    }
    return sum.value();
}

} // namespace floorset
