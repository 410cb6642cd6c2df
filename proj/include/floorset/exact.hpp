#pragma once
// Exact values of pi_S(x) and S_f(x) = sum_{n<=x} f([x/n]).
//
// Block method: O(sqrt x) via the constant-value intervals of [x/n].
// Brute force: the literal O(x) loop, kept as the validation oracle and
// exposed to the `verify` command.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "floorset/blocks.hpp"
#include "floorset/primes.hpp"
#include "floorset/summation.hpp"
#include "floorset/weights.hpp"

namespace floorset {

enum class Quantity { pi_S, S_prime, S_prime_power, S_lambda, S_one };
enum class Method { block, brute_force };

constexpr const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::pi_S:          return "pi_S";
        case Quantity::S_prime:       return "S_prime";
        case Quantity::S_prime_power: return "S_prime_power";
        case Quantity::S_lambda:      return "S_lambda";
        case Quantity::S_one:         return "S_one";
    }
    return "?";
}

struct ExactResult {
    uint64_t x = 0;
    Quantity quantity = Quantity::pi_S;
    Method method = Method::block;
    uint64_t count = 0;        // counting quantities; 0 for S_lambda
    double real_value = 0.0;   // == count for counting quantities
    double error_bound = 0.0;  // rounding bound for the S_lambda sum
    uint64_t blocks = 0;       // blocks visited (block) / distinct values (brute)
    double elapsed_seconds = 0.0;

    double value() const { return real_value; }
};

// The O(sqrt x) methods assume 64-bit primality plus sqrt(x)-length loops
// stay cheap; 2^50 keeps both comfortable.
constexpr uint64_t exact_max_x = uint64_t{1} << 50;

namespace detail {

inline void check_exact_x(uint64_t x) {
    if (x < 1 || x >= exact_max_x)
        throw std::domain_error("x must satisfy 1 <= x < 2^50");
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Rounding bound for a Neumaier-compensated sum of `terms` nonnegative terms:
// half an ulp of the final value plus the second-order compensation residue.
inline double neumaier_bound(double value, double abs_sum, uint64_t terms) {
    double eps = std::numeric_limits<double>::epsilon();
    return 0.5 * eps * std::abs(value) + 4.0 * eps * eps * static_cast<double>(terms) * abs_sum;
}

} // namespace detail

// Number of primes in S(x). Primes p <= B := [x/([sqrt x]+1)] are all
// members and come from the sieve; members above B are exactly the distinct
// values [x/n] for n <= [sqrt x], deduplicated by monotonicity.
inline ExactResult pi_S(uint64_t x) {
    detail::check_exact_x(x);
    detail::Stopwatch timer;

    uint64_t s = isqrt(x);
    uint64_t b = x / (s + 1);

    uint64_t count = 0;
    if (b >= 2) count = sieve(b).prime_pi(static_cast<double>(b));

    uint64_t prev = 0;
    for (uint64_t n = 1; n <= s; ++n) {
        uint64_t q = x / n;
        if (q == prev) continue;
        prev = q;
        if (q > b && is_prime(q)) ++count;
    }

    ExactResult r;
    r.x = x;
    r.quantity = Quantity::pi_S;
    r.method = Method::block;
    r.count = count;
    r.real_value = static_cast<double>(count);
    r.blocks = s;
    r.elapsed_seconds = timer.seconds();
    return r;
}

// S_f(x) = sum over blocks of f(value) * block length.
inline ExactResult floor_sum(uint64_t x, WeightFn f) {
    detail::check_exact_x(x);
    detail::Stopwatch timer;

    ExactResult r;
    r.x = x;
    r.method = Method::block;
    switch (f) {
        case WeightFn::prime:       r.quantity = Quantity::S_prime; break;
        case WeightFn::prime_power: r.quantity = Quantity::S_prime_power; break;
        case WeightFn::lambda:      r.quantity = Quantity::S_lambda; break;
        case WeightFn::one:         r.quantity = Quantity::S_one; break;
    }

    if (f == WeightFn::lambda) {
        // Descending value order, compensated.
        NeumaierSum sum;
        uint64_t blocks = 0;
        uint64_t n = 1;
        while (n <= x) {
            uint64_t q = x / n;
            uint64_t n_hi = x / q;
            double w = von_mangoldt(q);
            if (w != 0.0) sum.add(w * static_cast<double>(n_hi - n + 1));
            n = n_hi + 1;
            ++blocks;
        }
        r.real_value = sum.value();
        r.error_bound = detail::neumaier_bound(r.real_value, sum.abs_sum(), blocks);
        r.blocks = blocks;
        r.elapsed_seconds = timer.seconds();
        return r;
    }

    uint64_t count = 0;
    uint64_t blocks = 0;
    uint64_t n = x;
    while (n > 0) {
        uint64_t q = x / n;
        uint64_t n_lo = x / (q + 1);
        bool hit = f == WeightFn::one || (f == WeightFn::prime ? is_prime(q)
                                                               : is_prime_power(q).has_value());
        if (hit) count += n - n_lo;
        n = n_lo;
        ++blocks;
    }
    r.count = count;
    r.real_value = static_cast<double>(count);
    r.blocks = blocks;
    r.elapsed_seconds = timer.seconds();
    return r;
}

constexpr uint64_t brute_force_max_x = 100'000'000;

namespace detail {

inline void check_brute_x(uint64_t x) {
    if (x < 1) throw std::domain_error("x must be >= 1");
    if (x > brute_force_max_x)
        throw std::out_of_range("brute force is limited to x <= 10^8");
}

} // namespace detail

// The literal O(x) loop over n = 1..x. Weight evaluations are reused while
// [x/n] stays constant (the sequence is non-increasing), which changes the
// cost, not the arithmetic.
inline ExactResult brute_force(uint64_t x, Quantity quantity) {
    detail::check_brute_x(x);
    detail::Stopwatch timer;

    ExactResult r;
    r.x = x;
    r.quantity = quantity;
    r.method = Method::brute_force;

    uint64_t prev = 0;
    uint64_t distinct = 0;
    uint64_t count = 0;
    double lambda_current = 0.0;
    bool hit_current = false;
    NeumaierSum lambda_sum;

    for (uint64_t n = 1; n <= x; ++n) {
        uint64_t q = x / n;
        if (q != prev) {
            prev = q;
            ++distinct;
            switch (quantity) {
                case Quantity::pi_S:
                case Quantity::S_prime:       hit_current = is_prime(q); break;
                case Quantity::S_prime_power: hit_current = is_prime_power(q).has_value(); break;
                case Quantity::S_lambda:      lambda_current = von_mangoldt(q); break;
                case Quantity::S_one:         hit_current = true; break;
            }
            if (quantity == Quantity::pi_S && hit_current) ++count;
        }
        switch (quantity) {
            case Quantity::pi_S: break;
            case Quantity::S_lambda:
                if (lambda_current != 0.0) lambda_sum.add(lambda_current);
                break;
            default:
                if (hit_current) ++count;
                break;
        }
    }

    if (quantity == Quantity::S_lambda) {
        r.real_value = lambda_sum.value();
        r.error_bound = detail::neumaier_bound(r.real_value, lambda_sum.abs_sum(), x);
    } else {
        r.count = count;
        r.real_value = static_cast<double>(count);
    }
    r.blocks = distinct;
    r.elapsed_seconds = timer.seconds();
    return r;
}

inline uint64_t brute_cardinality(uint64_t x) {
    detail::check_brute_x(x);
    uint64_t prev = 0, distinct = 0;
    for (uint64_t n = 1; n <= x; ++n) {
        uint64_t q = x / n;
        if (q != prev) {
            prev = q;
            ++distinct;
        }
    }
    return distinct;
}

inline uint64_t brute_count_in_progression(uint64_t x, uint64_t q, uint64_t a) {
    detail::check_brute_x(x);
    if (q < 1 || a < 1 || a > q)
        throw std::domain_error("brute_count_in_progression: residue a must satisfy 1 <= a <= q");
    uint64_t r = a % q;
    uint64_t prev = 0, count = 0;
    for (uint64_t n = 1; n <= x; ++n) {
        uint64_t v = x / n;
        if (v != prev) {
            prev = v;
            if (v % q == r) ++count;
        }
    }
    return count;
}

// Every brute-force statistic in one O(x) pass; used by `verify` and the
// oracle-equivalence tests so exhaustive sweeps stay affordable.
struct BruteStats {
    uint64_t pi_S = 0;
    uint64_t s_prime = 0;
    uint64_t s_prime_power = 0;
    uint64_t s_one = 0;
    double s_lambda = 0.0;
    double s_lambda_error_bound = 0.0;
    uint64_t cardinality = 0;
    std::vector<uint64_t> progression;  // one count per (q, a) pair
};

inline BruteStats brute_stats(uint64_t x,
                              const std::vector<std::pair<uint64_t, uint64_t>>& progressions = {}) {
    detail::check_brute_x(x);
    for (auto [q, a] : progressions)
        if (q < 1 || a < 1 || a > q)
            throw std::domain_error("brute_stats: residue a must satisfy 1 <= a <= q");

    BruteStats stats;
    stats.progression.assign(progressions.size(), 0);

    uint64_t prev = 0;
    bool q_prime = false, q_power = false;
    double q_lambda = 0.0;
    NeumaierSum lambda_sum;

    for (uint64_t n = 1; n <= x; ++n) {
        uint64_t v = x / n;
        if (v != prev) {
            prev = v;
            ++stats.cardinality;
            auto pp = is_prime_power(v);
            q_power = pp.has_value();
            q_prime = q_power && pp->exponent == 1;
            q_lambda = q_power ? std::log(static_cast<double>(pp->prime)) : 0.0;
            if (q_prime) ++stats.pi_S;
            for (size_t i = 0; i < progressions.size(); ++i)
                if (v % progressions[i].first == progressions[i].second % progressions[i].first)
                    ++stats.progression[i];
        }
        stats.s_one += 1;
        if (q_prime) ++stats.s_prime;
        if (q_power) ++stats.s_prime_power;
        if (q_lambda != 0.0) lambda_sum.add(q_lambda);
    }
    stats.s_lambda = lambda_sum.value();
    stats.s_lambda_error_bound = detail::neumaier_bound(stats.s_lambda, lambda_sum.abs_sum(), x);
    return stats;
}

} // namespace floorset
