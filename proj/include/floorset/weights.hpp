#pragma once
// The arithmetic weights f summed over [x/n]: prime / prime-power
// indicators, the von Mangoldt function, and the constant 1.

#include <cstdint>
#include <stdexcept>

#include "floorset/primes.hpp"

namespace floorset {

enum class WeightFn { prime, prime_power, lambda, one };

inline double weight_value(WeightFn f, uint64_t n) {
    switch (f) {
        case WeightFn::prime:       return is_prime(n) ? 1.0 : 0.0;
        case WeightFn::prime_power: return is_prime_power(n) ? 1.0 : 0.0;
        case WeightFn::lambda:      return von_mangoldt(n);
        case WeightFn::one:         return 1.0;
    }
    throw std::invalid_argument("weight_value: unknown weight");
}

constexpr bool weight_is_integer(WeightFn f) { return f != WeightFn::lambda; }

constexpr const char* weight_name(WeightFn f) {
    switch (f) {
        case WeightFn::prime:       return "prime";
        case WeightFn::prime_power: return "prime-power";
        case WeightFn::lambda:      return "lambda";
        case WeightFn::one:         return "one";
    }
    return "?";
}

} // namespace floorset
