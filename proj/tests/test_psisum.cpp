#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "floorset/psisum.hpp"
#include "oracles.hpp"

using namespace floorset;

namespace {

// Naive double-precision evaluation: per-d classification through the
// brute-force factorizer, psi formed from the floating quotient, plain sum.
double naive_psi_sum(uint64_t x, uint64_t lo, uint64_t hi, int delta, PsiWeight w) {
    double sum = 0.0;
    uint64_t m = 0;
    for (uint64_t d = lo + 1; d <= hi; ++d) {
        auto pp = oracles::brute_prime_power(d);
        double weight = 0.0;
        switch (w) {
            case PsiWeight::lambda:
                if (pp.valid) weight = std::log(static_cast<double>(pp.prime));
                break;
            case PsiWeight::log_prime:
                if (pp.valid && pp.exponent == 1) weight = std::log(static_cast<double>(d));
                break;
            case PsiWeight::prime:
                if (pp.valid && pp.exponent == 1) weight = 1.0;
                break;
            case PsiWeight::prime_power:
                if (pp.valid) weight = 1.0;
                break;
        }
        if (weight == 0.0) continue;
        ++m;
        double t = static_cast<double>(x) / static_cast<double>(d + static_cast<uint64_t>(delta));
        sum += weight * sawtooth(t);
    }
    (void)m;
    return sum;
}

} // namespace

TEST_CASE("sawtooth basics", "[psisum]") {
    CHECK(sawtooth(3.0) == -0.5);
    CHECK(sawtooth(2.5) == 0.0);
    CHECK(sawtooth(0.25) == -0.25);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 1'000'000.0);
    for (int i = 0; i < 10'000; ++i) {
        double t = dist(rng);
        CHECK(sawtooth(t + 1.0) == sawtooth(t));  // both arguments exact below 2^52
        CHECK(sawtooth(t) >= -0.5);
        CHECK(sawtooth(t) < 0.5);
    }
}

TEST_CASE("integer-remainder psi equals the real-arithmetic definition", "[psisum]") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<uint64_t> xdist(1, (uint64_t{1} << 50) - 1);
    for (int i = 0; i < 10'000; ++i) {
        uint64_t x = xdist(rng);
        uint64_t m = std::uniform_int_distribution<uint64_t>(1, x)(rng);
        double t = static_cast<double>(x) / static_cast<double>(m);
        double exact = sawtooth_quotient(x, m);
        double floated = sawtooth(t);
        // the float route is off by at most one ulp of the quotient
        CHECK(std::abs(exact - floated) <= std::numeric_limits<double>::epsilon() * std::max(1.0, t));
        CHECK(exact >= -0.5);
        CHECK(exact < 0.5);
    }
}

TEST_CASE("four-term prime sum at x = 100", "[psisum]") {
    auto r = sawtooth_sum(100, 10, 20, 0, PsiWeight::prime);
    CHECK(r.term_count == 4);  // p = 11, 13, 17, 19
    double expected = 0.0;
    for (uint64_t p : {11, 13, 17, 19})
        expected += static_cast<double>(100 % p) / static_cast<double>(p) - 0.5;
    CHECK(r.value == Catch::Approx(expected).margin(1e-15));
    CHECK(r.value == Catch::Approx(-0.0712723808699040897).margin(1e-15));
    CHECK(r.envelope == Catch::Approx(std::pow(1e4 * std::pow(10.0, 7.0), 1.0 / 12.0)).epsilon(1e-12));
    CHECK(r.ratio == std::abs(r.value) / r.envelope);
}

TEST_CASE("lambda equals log-prime weight on power-free ranges", "[psisum]") {
    // (40, 46] holds primes 41, 43 and no higher prime powers.
    auto lam = sawtooth_sum(1000, 40, 46, 1, PsiWeight::lambda);
    auto logp = sawtooth_sum(1000, 40, 46, 1, PsiWeight::log_prime);
    CHECK(lam.value == logp.value);
    CHECK(lam.term_count == logp.term_count);
    CHECK(lam.term_count == 2);
}

TEST_CASE("sieve-backed sum equals the naive loop", "[psisum]") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 10; ++i) {
        uint64_t d_hi = std::uniform_int_distribution<uint64_t>(100, 100'000)(rng);
        uint64_t d_lo = std::uniform_int_distribution<uint64_t>(1, d_hi - 1)(rng);
        // keep x/d moderate (the paper's window regime) so the naive
        // floating psi stays within the 1e-9 per-term budget
        uint64_t x = std::uniform_int_distribution<uint64_t>(d_hi, d_lo * 200'000 + d_hi)(rng);
        int delta = static_cast<int>(i % 2);
        for (PsiWeight w : {PsiWeight::lambda, PsiWeight::log_prime, PsiWeight::prime,
                            PsiWeight::prime_power}) {
            auto r = sawtooth_sum(x, d_lo, d_hi, delta, w);
            double naive = naive_psi_sum(x, d_lo, d_hi, delta, w);
            CAPTURE(x, d_lo, d_hi, delta, static_cast<int>(w));
            REQUIRE(std::abs(r.value - naive) <
                    1e-9 * static_cast<double>(std::max<uint64_t>(r.term_count, 1)));
            REQUIRE(std::abs(r.value) <=
                    0.5 * static_cast<double>(r.term_count) * std::log(static_cast<double>(d_hi)) + 1e-9);
        }
    }
}

TEST_CASE("dyadic splitting", "[psisum]") {
    uint64_t x = 50'000'000, lo = 1'000, mid = 33'333, hi = 200'000;
    for (PsiWeight w : {PsiWeight::lambda, PsiWeight::prime}) {
        auto whole = sawtooth_sum(x, lo, hi, 0, w);
        auto left = sawtooth_sum(x, lo, mid, 0, w);
        auto right = sawtooth_sum(x, mid, hi, 0, w);
        CHECK(std::abs(whole.value - (left.value + right.value)) <
              1e-9 * static_cast<double>(whole.term_count));
        CHECK(whole.term_count == left.term_count + right.term_count);
    }
}

TEST_CASE("sawtooth_sum parameter validation", "[psisum]") {
    CHECK_THROWS_AS(sawtooth_sum(100, 0, 20, 0, PsiWeight::prime), std::domain_error);
    CHECK_THROWS_AS(sawtooth_sum(100, 20, 20, 0, PsiWeight::prime), std::domain_error);
    CHECK_THROWS_AS(sawtooth_sum(100, 10, 101, 0, PsiWeight::prime), std::domain_error);
    CHECK_THROWS_AS(sawtooth_sum(100, 10, 20, 2, PsiWeight::prime), std::domain_error);
    CHECK_THROWS_AS(sawtooth_sum(uint64_t{1} << 51, 10, psi_sum_max_hi + 1, 0, PsiWeight::prime),
                    std::domain_error);
}

TEST_CASE("remainder sum over the paper window", "[psisum]") {
    // Zero weight gives an exactly zero sum.
    CHECK(sawtooth_sum_with(123'456, 100, 1'000, 0, [](uint64_t) { return 0.0; }) == 0.0);

    // N = sqrt(x): the window collapses and the sum is empty.
    auto empty = remainder_sum(1'000'000, 1'000, 0, PsiWeight::prime);
    CHECK(empty.value == 0.0);
    CHECK(empty.term_count == 0);

    // Against the naive loop at x = 10^8, N = 10^3.
    auto r = remainder_sum(100'000'000, 1'000, 0, PsiWeight::prime);
    double naive = naive_psi_sum(100'000'000, 1'000, 100'000, 0, PsiWeight::prime);
    CHECK(r.d_hi == 100'000);
    CHECK(std::abs(r.value - naive) < 1e-9 * static_cast<double>(r.term_count));
    CHECK(r.envelope == 1'000.0);

    auto rp = remainder_sum(100'000'000, 1'000, 1, PsiWeight::prime_power);
    double naive_p = naive_psi_sum(100'000'000, 1'000, 100'000, 1, PsiWeight::prime_power);
    CHECK(std::abs(rp.value - naive_p) < 1e-9 * static_cast<double>(rp.term_count));

    // Window violations: N below x^(1/3) or above sqrt(x).
    CHECK_THROWS_AS(remainder_sum(1'000'000, 99, 0, PsiWeight::prime), std::domain_error);
    CHECK_THROWS_AS(remainder_sum(1'000'000, 1'001, 0, PsiWeight::prime), std::domain_error);
    CHECK_THROWS_AS(remainder_sum(1'000'000, 500, 2, PsiWeight::prime), std::domain_error);
}
