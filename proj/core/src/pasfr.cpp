#include "rateproj/pasfr.hpp"

#include <cmath>
#include <string>

#include "rateproj/error.hpp"

namespace rateproj {

PasfrPattern::PasfrPattern(std::array<double, kFertilityAgeGroups> proportions)
    : p_(proportions) {
    double sum = 0.0;
    for (double v : p_) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw InvalidRateError("PASFR proportion out of [0,1]");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidRateError("PASFR proportions sum to " + std::to_string(sum) +
                               ", expected 1");
    }
}

PasfrPattern PasfrPattern::normalized(const std::array<double, kFertilityAgeGroups>& raw) {
    double sum = 0.0;
    for (double v : raw) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidRateError("PASFR entry must be finite and nonnegative");
        }
        sum += v;
    }
    if (sum <= 0.0) {
        throw InvalidRateError("cannot normalize an all-zero PASFR vector");
    }
    std::array<double, kFertilityAgeGroups> p{};
    for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) p[i] = raw[i] / sum;
    // Absorb the residual rounding into the largest entry so the sum is
    // exactly one.
    double s = 0.0;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) {
        s += p[i];
        if (p[i] > p[imax]) imax = i;
    }
    p[imax] += 1.0 - s;
    return PasfrPattern(p);
}

}  // namespace rateproj
