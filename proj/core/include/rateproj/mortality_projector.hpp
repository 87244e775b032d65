#ifndef RATEPROJ_MORTALITY_PROJECTOR_HPP_
#define RATEPROJ_MORTALITY_PROJECTOR_HPP_

#include <optional>
#include <vector>

#include "rateproj/lee_carter.hpp"
#include "rateproj/mortality.hpp"
#include "rateproj/period.hpp"

namespace rateproj {

struct BisectionConfig {
    double k_lo = -300.0;
    double k_hi = 300.0;
    double e0_tolerance = 0.01;  // years
    // The bisection interval is also narrowed to this width so the
    // returned k is accurate in its own right, not just in e0 terms.
    double k_tolerance = 1e-4;
    int max_iter = 200;
    // Bracket doublings attempted before declaring the target unreachable.
    int max_bracket_doublings = 6;
};

enum class BxSource { Estimated, ModelLifeTable };

struct MortalityProjectionConfig {
    AxMethod ax_method = AxMethod::Average;
    BxSource bx_source = BxSource::Estimated;
    // Model-life-table b_x; required when bx_source is ModelLifeTable.
    std::vector<double> model_bx;
    bool hiv_mode = false;
    int hiv_cutoff_year = 1985;   // history up to here feeds the AIDS-free target
    int hiv_target_year = 2100;   // excess mortality gone by this year
    BisectionConfig bisection;
    double crossover_cap_age = 100.0;
};

// Country-level fit products computed once and shared read-only across
// trajectories.
struct MortalityFitProducts {
    std::vector<double> ax_f;
    std::vector<double> ax_m;
    // Per-future-period baselines; used instead of ax_f/ax_m when the
    // HIV interpolation path is active (then non-empty).
    std::vector<std::vector<double>> ax_f_by_period;
    std::vector<std::vector<double>> ax_m_by_period;
    std::vector<double> b_x;   // coherent sensitivity
    std::vector<double> b_ux;  // ultimate sensitivity
    bool rotate = true;        // false on the HIV path (model b_x held fixed)
};

// Solved mortality schedules for one trajectory, indexed by future
// period; k holds the solved sex-specific indices.
struct ProjectedMortality {
    std::vector<std::vector<double>> m_f;  // [period][age]
    std::vector<std::vector<double>> m_m;
    std::vector<double> k_f;
    std::vector<double> k_m;
};

// Bisection solve of e0(exp(a + B k)) = target. e0 is strictly
// decreasing in k when all B entries are positive; the initial bracket
// is doubled adaptively when the target lies outside its range.
double solve_k_for_e0(const std::vector<double>& a_x, const std::vector<double>& b_x,
                      double target_e0, Sex sex, const BisectionConfig& cfg);

// Per-future-period a_x interpolated from the smoothed latest baseline
// toward the smoothed pre-epidemic average, reaching the AIDS-free
// target at the period containing hiv_target_year and constant after.
std::vector<std::vector<double>> hiv_ax_path(const MortalitySurface& surface,
                                             const PeriodAxis& future_periods,
                                             const MortalityProjectionConfig& cfg);

// Assembles fit products from Kannisto-extended surfaces per the config
// (estimated or model b_x, optional HIV baseline path).
MortalityFitProducts fit_mortality_model(const MortalitySurface& extended_f,
                                         const MortalitySurface& extended_m,
                                         const PeriodAxis& future_periods,
                                         const MortalityProjectionConfig& cfg);

// Full projection of one trajectory: rotation at the combined e0,
// sex-specific k solves, rate reconstruction, then the old-age
// crossover cap when male e0 is below female e0.
ProjectedMortality project_trajectory(const MortalityFitProducts& fit,
                                      const std::vector<double>& e0_f,
                                      const std::vector<double>& e0_m,
                                      const MortalityProjectionConfig& cfg);

}  // namespace rateproj

#endif  // RATEPROJ_MORTALITY_PROJECTOR_HPP_
