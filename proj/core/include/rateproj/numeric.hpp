#ifndef RATEPROJ_NUMERIC_HPP_
#define RATEPROJ_NUMERIC_HPP_

#include <vector>

namespace rateproj {

// Clamp bound used before the logit transform; proportions are pulled
// into [kLogitEps, 1 - kLogitEps] so logits stay finite at 0 and 1.
inline constexpr double kLogitEps = 1e-6;

// log(p/(1-p)) after clamping p into [kLogitEps, 1 - kLogitEps].
double logit_clamped(double p);

// Inverse of the logit transform, 1/(1+exp(-x)).
double inverse_logit(double x);

// Two passes of a centered (0.25, 0.5, 0.25) moving average. First and
// last entries are copied through unchanged on each pass. With
// preserve_first set, the youngest-age value is restored verbatim after
// both passes.
std::vector<double> smooth_over_age(const std::vector<double>& values,
                                    bool preserve_first = false);

}  // namespace rateproj

#endif  // RATEPROJ_NUMERIC_HPP_
