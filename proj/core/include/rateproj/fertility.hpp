#ifndef RATEPROJ_FERTILITY_HPP_
#define RATEPROJ_FERTILITY_HPP_

#include <array>
#include <optional>
#include <vector>

#include "rateproj/pasfr.hpp"
#include "rateproj/trajectories.hpp"

namespace rateproj {

// All times below are counted in 5-year periods relative to the base
// period t_r (so t_r = 0 and the first projected period is 1).
struct FertilityProjectionConfig {
    int trend_window = 3;               // periods the national trend is fitted over
    double low_tfr_threshold = 1.8;     // children per woman
    int phase3_offset_periods = 5;      // 25 years past Phase III start
    int min_reach_periods = 2;          // global pattern reached in >= 10 years
    int extrapolation_cap_periods = 10; // Phase III estimate capped 50 years past t_e
    // Restrict the ultimate-TFR median to trajectories already in
    // Phase III at the end period.
    bool fhat_u_phase3_only = false;
};

// Element-wise mean of the given patterns, renormalized.
PasfrPattern global_model_pattern(const std::vector<PasfrPattern>& patterns);

// Logit-linear interpolation from the base pattern toward the global
// model pattern; tau is the elapsed fraction of [t_r, t_g].
PasfrPattern pasfr_toward_global(const PasfrPattern& p_r, const PasfrPattern& p_g, double tau);

// Logit-linear continuation of the national trend observed between
// t_{r-T} and t_r, evaluated steps_ahead periods past t_r.
PasfrPattern pasfr_national_trend(const PasfrPattern& p_r, const PasfrPattern& p_r_minus_window,
                                  int steps_ahead, int window_periods);

// Logit-space blend: weight tau on the global-convergence projection,
// 1 - tau on the national-trend projection.
PasfrPattern pasfr_blend(const PasfrPattern& p_global, const PasfrPattern& p_national,
                         double tau);

// PASFR-weighted mean of the age-group midpoints, in years.
double mean_age_childbearing(const PasfrPattern& p);

// Ultimate fertility level: median across trajectories of TFR in the
// last projection period.
double estimate_ultimate_tfr(const std::vector<TfrTrajectory>& trajectories,
                             std::size_t num_future_periods,
                             const FertilityProjectionConfig& cfg);

struct TgEstimate {
    int t_g = 0;       // periods past t_r at which the global pattern is reached
    bool case1 = false;  // Phase III start known before the end period
};

// Convergence-time estimate for one trajectory. tfr covers periods
// 1..P past the base; phase3_start is the Phase III start in the same
// relative units when known (may be <= 0 for an observed start).
TgEstimate estimate_tg(const std::vector<double>& tfr, std::optional<int> phase3_start,
                       double ultimate_tfr, const FertilityProjectionConfig& cfg);

struct PasfrTrajectory {
    std::vector<PasfrPattern> patterns;  // one per future period 1..P
    int t_g = 0;
    std::optional<int> frozen_from;  // first period emitting the frozen pattern
};

// Full per-trajectory PASFR projection: blended convergence toward the
// global pattern up to t_g, held constant after, with the
// late-childbearing freeze applied in Case 1.
PasfrTrajectory project_pasfr_trajectory(const PasfrPattern& p_r,
                                         const PasfrPattern& p_r_minus_window,
                                         int window_periods, const PasfrPattern& p_g,
                                         const TgEstimate& tg, std::size_t num_future_periods);

// ASFR_a = TFR * p_a / 5 for the 5-year groups, births per woman-year.
std::array<double, kFertilityAgeGroups> asfr_from_pasfr(const PasfrPattern& p, double tfr);

}  // namespace rateproj

#endif  // RATEPROJ_FERTILITY_HPP_
