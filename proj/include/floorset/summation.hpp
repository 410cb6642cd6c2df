#pragma once

#include <cmath>
#include <limits>

namespace floorset {

// Neumaier's compensated summation. Deterministic for a fixed order of adds;
// error_bound() is a conservative bound on the accumulated rounding error.
class NeumaierSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
        abs_sum_ += std::abs(v);
    }

    double value() const { return sum_ + comp_; }
    double abs_sum() const { return abs_sum_; }
    double error_bound() const {
        return 2.0 * std::numeric_limits<double>::epsilon() * abs_sum_;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_sum_ = 0.0;
};

} // namespace floorset
