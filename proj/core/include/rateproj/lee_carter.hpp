#ifndef RATEPROJ_LEE_CARTER_HPP_
#define RATEPROJ_LEE_CARTER_HPP_

#include <string>
#include <utility>
#include <vector>

#include "rateproj/mortality.hpp"

namespace rateproj {

// How the baseline a_x is obtained from the historical surface.
enum class AxMethod { Average, Latest, LatestSmoothed, HivInterpolated };

const char* to_string(AxMethod m);
AxMethod ax_method_from_string(const std::string& s);

// Fitted Lee-Carter parameters for one sex. b_x sums to one; under the
// Average baseline k_t sums to zero, under Latest k_T is zero.
struct LeeCarterParams {
    std::vector<double> a_x;
    std::vector<double> b_x;
    std::vector<double> k_t;
    AxMethod ax_method = AxMethod::Average;
};

// Baseline log-rate pattern per the chosen method (time average, latest
// period, or latest period smoothed over age with the youngest group
// preserved).
std::vector<double> estimate_ax(const MortalitySurface& surface, AxMethod method);

// k_t as the summed log-rate deviation from a_x; b_x as the least
// squares regression of deviations on k_t. b_x is rescaled to sum to
// one with k_t scaled inversely, leaving fitted log-rates unchanged.
std::pair<std::vector<double>, std::vector<double>> estimate_kt_bx(
    const MortalitySurface& surface, const std::vector<double>& a_x);

// Element-wise mean of the two sex-specific sensitivities.
std::vector<double> coherent_bx(const std::vector<double>& b_f,
                                const std::vector<double>& b_m);

// Ultimate sensitivity schedule: flat over ages 0 through 60-64 at the
// mean of the ten groups 15-19 ... 60-64, proportionally continued over
// the old-age tail, rescaled to sum to one.
std::vector<double> ultimate_bux(const std::vector<double>& b_x);

// Rotation of b_x toward b_ux as life expectancy rises from e0_start to
// e0_ultimate.
struct RotationSchedule {
    std::vector<double> b_x;
    std::vector<double> b_ux;
    double e0_start = 80.0;
    double e0_ultimate = 102.0;
};

// Rotation weight at the given life expectancy: 0 below e0_start, 1 at
// or above e0_ultimate, smooth sine-based ramp in between.
double rotation_weight(const RotationSchedule& schedule, double e0);

// (1-w) b_x + w b_ux at the given life expectancy.
std::vector<double> rotated_bx(const RotationSchedule& schedule, double e0);

}  // namespace rateproj

#endif  // RATEPROJ_LEE_CARTER_HPP_
