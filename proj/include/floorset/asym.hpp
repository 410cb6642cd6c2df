#pragma once
// Predicted main terms:
//   li(x)      = int_2^x dt/log t
//   li_S(x)    = int_2^{sqrt x} dt/log t + int_2^{sqrt x} dt/log(x/t)
//   a_n        = coefficients of li_S(x) ~ sqrt(x) * sum a_n/(log x)^n,
//                derived by repeated integration by parts (not hard-coded)
//   C_f        = sum_d f(d)/(d(d+1)) as a rigorous enclosure
//   pnt envelope sqrt(x)*exp(-c (log x)^{3/5} (log log x)^{-1/5})
//
// Integrals are evaluated in u = log t, where both integrands are smooth
// and the adaptive Gauss-Kronrod rule converges quickly.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "floorset/primes.hpp"
#include "floorset/summation.hpp"
#include "floorset/weights.hpp"

namespace floorset {

struct Quadrature {
    double value = 0.0;
    double error = 0.0;  // accumulated per-panel |K15 - G7| estimate
};

namespace detail {

template <class F>
Quadrature integrate(F f, double a, double b, double rel_tol) {
    Quadrature q;
    if (b <= a) return q;
    q.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, /*max_depth=*/40, rel_tol, &q.error);
    return q;
}

} // namespace detail

// int_2^x dt/log t, relative error <= rel_tol.
inline Quadrature li_quad(double x, double rel_tol = 1e-12) {
    if (!(x >= 2.0)) throw std::domain_error("li: x must be >= 2");
    double lo = std::log(2.0), hi = std::log(x);
    return detail::integrate([](double u) { return std::exp(u) / u; }, lo, hi, rel_tol);
}

inline double li(double x) { return li_quad(x).value; }

// The two-integral main term for pi_S. Requires x >= 4 so that sqrt(x) >= 2.
inline Quadrature li_S_quad(double x, double rel_tol = 1e-12) {
    if (!(x >= 4.0)) throw std::domain_error("li_S: x must be >= 4");
    double big_l = std::log(x);
    Quadrature first = li_quad(std::sqrt(x), rel_tol);
    Quadrature second = detail::integrate(
        [big_l](double u) { return std::exp(u) / (big_l - u); },
        std::log(2.0), big_l / 2.0, rel_tol);
    return Quadrature{first.value + second.value, first.error + second.error};
}

inline double li_S(double x) { return li_S_quad(x).value; }

// a_1..a_N of the sqrt(x)/(log x)^n expansion of li_S, together with the
// per-integral contributions. Each integration by parts of
//   int dt/(log t)^n        gives boundary 2^n sqrt(x)/(log x)^n + n * (next)
//   int dt/(log(x/t))^n     gives boundary 2^n sqrt(x)/(log x)^n - n * (next)
// so the multipliers evolve as m -> +n*m and m -> -n*m respectively.
// All intermediate values are integers below 2^53, hence exact in double.
struct AsymptoticCoeffs {
    int terms = 0;
    std::vector<double> a;            // a[i] = a_{i+1}
    std::vector<double> from_li;      // first-integral contribution
    std::vector<double> from_mirror;  // second-integral contribution
};

inline AsymptoticCoeffs expansion_coeffs(int n_terms) {
    if (n_terms < 1 || n_terms > 12)
        throw std::domain_error("expansion_coeffs: N must satisfy 1 <= N <= 12");
    AsymptoticCoeffs c;
    c.terms = n_terms;
    double mult_first = 1.0, mult_second = 1.0, two_pow = 1.0;
    for (int n = 1; n <= n_terms; ++n) {
        two_pow *= 2.0;
        double first = mult_first * two_pow;
        double second = mult_second * two_pow;
        c.from_li.push_back(first);
        c.from_mirror.push_back(second);
        c.a.push_back(first + second);
        mult_first *= n;
        mult_second *= -n;
    }
    return c;
}

// Enclosure of C_f = sum_d f(d)/(d(d+1)).
struct ConstantInterval {
    WeightFn f = WeightFn::prime;
    double lower = 0.0;
    double upper = 0.0;
    uint64_t cutoff = 0;  // largest term index summed

    double width() const { return upper - lower; }
    double midpoint() const { return 0.5 * (lower + upper); }
};

// Smallest table limit for which the tail bound reaches `tol`:
// indicator weights use tail <= 1/(P+1); lambda uses tail <= 2 log(P)/P.
inline uint64_t constant_required_limit(WeightFn f, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("constant_required_limit: tol must be > 0");
    if (f == WeightFn::one)
        throw std::invalid_argument("constant_required_limit: f must be prime, prime-power or lambda");
    if (f != WeightFn::lambda) return static_cast<uint64_t>(std::ceil(1.0 / tol));
    uint64_t p = 8;
    while (2.0 * std::log(static_cast<double>(p)) / static_cast<double>(p) > tol) {
        if (p > (uint64_t{1} << 62)) throw std::domain_error("constant_required_limit: tol too small");
        p *= 2;
    }
    // tighten by bisection on the monotone (for p >= 8) tail bound
    uint64_t lo = p / 2, hi = p;
    while (lo + 1 < hi) {
        uint64_t mid = lo + (hi - lo) / 2;
        double bound = 2.0 * std::log(static_cast<double>(mid)) / static_cast<double>(mid);
        (bound > tol ? lo : hi) = mid;
    }
    return hi < 8 ? 8 : hi;
}

inline double constant_tail_bound(WeightFn f, uint64_t cutoff) {
    if (f == WeightFn::lambda)
        return 2.0 * std::log(static_cast<double>(cutoff)) / static_cast<double>(cutoff);
    return 1.0 / (static_cast<double>(cutoff) + 1.0);
}

// Partial sum over prime powers <= table.limit plus the rigorous tail bound.
// Terms are added in ascending order with compensated summation.
inline ConstantInterval density_constant(WeightFn f, double tol, const PrimeTable& table) {
    if (f == WeightFn::one)
        throw std::invalid_argument("density_constant: f must be prime, prime-power or lambda");
    uint64_t needed = constant_required_limit(f, tol);
    if (table.limit() < needed)
        throw std::invalid_argument("density_constant: table limit " + std::to_string(table.limit()) +
                                    " too small for tol; need >= " + std::to_string(needed));

    uint64_t p_max = table.limit();
    auto term = [f](uint64_t d, double logp) {
        double dd = static_cast<double>(d);
        double w = f == WeightFn::lambda ? logp : 1.0;
        return w / (dd * (dd + 1.0));
    };

    // Higher powers p^nu (nu >= 2) merged into the ascending prime sequence.
    std::vector<std::pair<uint64_t, double>> powers;
    if (f != WeightFn::prime) {
        for (uint64_t p : table.primes()) {
            if (p > p_max / p) break;
            double logp = std::log(static_cast<double>(p));
            for (uint64_t v = p * p;; v *= p) {
                powers.emplace_back(v, logp);
                if (v > p_max / p) break;
            }
        }
        std::sort(powers.begin(), powers.end());
    }

    NeumaierSum sum;
    size_t next_power = 0;
    for (uint64_t p : table.primes()) {
        while (next_power < powers.size() && powers[next_power].first < p) {
            sum.add(term(powers[next_power].first, powers[next_power].second));
            ++next_power;
        }
        sum.add(term(p, std::log(static_cast<double>(p))));
    }
    while (next_power < powers.size()) {
        sum.add(term(powers[next_power].first, powers[next_power].second));
        ++next_power;
    }

    ConstantInterval interval;
    interval.f = f;
    interval.cutoff = p_max;
    interval.lower = sum.value();
    interval.upper = interval.lower + constant_tail_bound(f, p_max);
    return interval;
}

// sqrt(x) * exp(-c (log x)^{3/5} (log log x)^{-1/5}); the strong-PNT error
// shape used as a report normalizer. c is a parameter, not a claim.
inline double pnt_envelope(double x, double c) {
    if (!(x >= 16.0)) throw std::domain_error("pnt_envelope: x must be >= 16 (log log x must be positive)");
    if (!(c >= 0.0)) throw std::domain_error("pnt_envelope: c must be >= 0");
    double l = std::log(x);
    double ll = std::log(l);
    return std::sqrt(x) * std::exp(-c * std::pow(l, 0.6) * std::pow(ll, -0.2));
}

} // namespace floorset
