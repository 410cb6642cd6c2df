// Prints pi_S(x) against its main term li_S(x) on a short geometric grid,
// normalized by sqrt(x)/log(x).

#include <cstdio>

#include "floorset/asym.hpp"
#include "floorset/exact.hpp"

int main() {
    std::printf("%14s %12s %16s %12s %12s\n", "x", "pi_S(x)", "li_S(x)", "delta", "normalized");
    for (uint64_t x = 100'000; x <= 100'000'000'000ull; x *= 10) {
        auto exact = floorset::pi_S(x);
        double xd = static_cast<double>(x);
        double predicted = floorset::li_S(xd);
        double delta = exact.value() - predicted;
        double scale = std::sqrt(xd) / std::log(xd);
        std::printf("%14llu %12llu %16.3f %12.3f %12.6f\n",
                    static_cast<unsigned long long>(x),
                    static_cast<unsigned long long>(exact.count), predicted, delta, delta / scale);
    }
    return 0;
}
