#include "rateproj/quantiles.hpp"

#include <algorithm>
#include <cmath>

#include "rateproj/error.hpp"

namespace rateproj {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DegenerateInputError("quantile level must lie in (0,1)");
    }
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const std::size_t i = static_cast<std::size_t>(std::floor(h));
    if (i + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace

double empirical_quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw DegenerateInputError("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, q);
}

std::vector<double> empirical_quantiles(std::vector<double> values,
                                        const std::vector<double>& levels) {
    if (values.empty()) {
        throw DegenerateInputError("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(levels.size());
    for (double q : levels) out.push_back(quantile_sorted(values, q));
    return out;
}

}  // namespace rateproj
