#ifndef RATEPROJ_KANNISTO_HPP_
#define RATEPROJ_KANNISTO_HPP_

#include <utility>
#include <vector>

#include "rateproj/mortality.hpp"

namespace rateproj {

// Coefficients of the coherent Kannisto model
//   logit(m_x^g) = log c_g + d x,
// with a shared slope d and sex-specific levels c_F, c_M.
struct KannistoCoeffs {
    double c_f = 0.0;
    double c_m = 0.0;
    double d = 0.0;
    std::vector<double> fit_ages;  // group midpoints used in the fit
};

enum class KannistoMode { Coherent, Classic };

// Joint OLS fit of logit(m) on (1, 1_{male}, x) over all closed groups
// with start age in [80, 100) for both sexes. With four groups per sex,
// eight points enter the fit.
KannistoCoeffs fit_coherent_kannisto(const MortalitySchedule& m_f,
                                     const MortalitySchedule& m_m);

// Single-sex fit of logit(m) on (1, x); returns (c, d).
std::pair<double, double> fit_classic_kannisto(const MortalitySchedule& m);

// Extends both surfaces to the canonical 28-group grid, period by
// period. Closed observed groups are kept verbatim below the splice;
// everything from the observed open interval onward, and all groups
// with start age >= 100 regardless, take fitted logistic values. The
// open 130+ group is evaluated at x = 130.
std::pair<MortalitySurface, MortalitySurface> extend_to_130(const MortalitySurface& surface_f,
                                                            const MortalitySurface& surface_m,
                                                            KannistoMode mode);

}  // namespace rateproj

#endif  // RATEPROJ_KANNISTO_HPP_
