#include "rateproj/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "rateproj/error.hpp"

namespace rateproj {

double logit_clamped(double p) {
    const double q = std::clamp(p, kLogitEps, 1.0 - kLogitEps);
    return std::log(q / (1.0 - q));
}

double inverse_logit(double x) { return 1.0 / (1.0 + std::exp(-x)); }

namespace {

std::vector<double> one_pass(const std::vector<double>& v) {
    std::vector<double> out(v);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        out[i] = 0.25 * v[i - 1] + 0.5 * v[i] + 0.25 * v[i + 1];
    }
    return out;
}

}  // namespace

std::vector<double> smooth_over_age(const std::vector<double>& values, bool preserve_first) {
    if (values.size() < 3) {
        throw DegenerateInputError("smooth_over_age needs at least three age groups");
    }
    std::vector<double> out = one_pass(one_pass(values));
    if (preserve_first) out.front() = values.front();
    return out;
}

}  // namespace rateproj
