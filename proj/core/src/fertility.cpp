#include "rateproj/fertility.hpp"

#include <algorithm>
#include <cmath>

#include "rateproj/error.hpp"
#include "rateproj/numeric.hpp"

namespace rateproj {

PasfrPattern global_model_pattern(const std::vector<PasfrPattern>& patterns) {
    if (patterns.empty()) {
        throw DegenerateInputError("global model pattern needs at least one input pattern");
    }
    std::array<double, kFertilityAgeGroups> mean{};
    for (const auto& p : patterns) {
        for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) mean[i] += p.at(i);
    }
    for (double& v : mean) v /= static_cast<double>(patterns.size());
    return PasfrPattern::normalized(mean);
}

PasfrPattern pasfr_toward_global(const PasfrPattern& p_r, const PasfrPattern& p_g, double tau) {
    std::array<double, kFertilityAgeGroups> out{};
    for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) {
        const double lr = logit_clamped(p_r.at(i));
        const double lg = logit_clamped(p_g.at(i));
        out[i] = inverse_logit(lr + tau * (lg - lr));
    }
    return PasfrPattern::normalized(out);
}

PasfrPattern pasfr_national_trend(const PasfrPattern& p_r, const PasfrPattern& p_r_minus_window,
                                  int steps_ahead, int window_periods) {
    if (window_periods <= 0) {
        throw DegenerateInputError("national trend window must cover at least one period");
    }
    const double slope_factor =
        static_cast<double>(steps_ahead) / static_cast<double>(window_periods);
    std::array<double, kFertilityAgeGroups> out{};
    for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) {
        const double lr = logit_clamped(p_r.at(i));
        const double lp = logit_clamped(p_r_minus_window.at(i));
        out[i] = inverse_logit(lr + slope_factor * (lr - lp));
    }
    return PasfrPattern::normalized(out);
}

PasfrPattern pasfr_blend(const PasfrPattern& p_global, const PasfrPattern& p_national,
                         double tau) {
    std::array<double, kFertilityAgeGroups> out{};
    for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) {
        const double li = logit_clamped(p_global.at(i));
        const double lii = logit_clamped(p_national.at(i));
        out[i] = inverse_logit(tau * li + (1.0 - tau) * lii);
    }
    return PasfrPattern::normalized(out);
}

double mean_age_childbearing(const PasfrPattern& p) {
    double mac = 0.0;
    for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) {
        mac += kFertilityAgeMidpoints[i] * p.at(i);
    }
    return mac;
}

double estimate_ultimate_tfr(const std::vector<TfrTrajectory>& trajectories,
                             std::size_t num_future_periods,
                             const FertilityProjectionConfig& cfg) {
    if (trajectories.empty()) {
        throw DegenerateInputError("ultimate TFR needs at least one trajectory");
    }
    const int end_index = static_cast<int>(num_future_periods);
    std::vector<double> finals;
    for (const auto& t : trajectories) {
        if (cfg.fhat_u_phase3_only) {
            if (!t.phase3_start_year.has_value()) continue;
        }
        finals.push_back(t.tfr.back());
    }
    if (finals.empty()) {
        // Phase III filter left nothing; fall back to all trajectories.
        for (const auto& t : trajectories) finals.push_back(t.tfr.back());
    }
    (void)end_index;
    std::sort(finals.begin(), finals.end());
    const std::size_t n = finals.size();
    return (n % 2 == 1) ? finals[n / 2] : 0.5 * (finals[n / 2 - 1] + finals[n / 2]);
}

TgEstimate estimate_tg(const std::vector<double>& tfr, std::optional<int> phase3_start,
                       double ultimate_tfr, const FertilityProjectionConfig& cfg) {
    const int end = static_cast<int>(tfr.size());  // t_e in periods past t_r
    if (end < 1) {
        throw DegenerateInputError("TFR trajectory has no future periods");
    }
    const auto f = [&](int t) { return tfr[static_cast<std::size_t>(t - 1)]; };

    TgEstimate out;
    if (phase3_start.has_value() && *phase3_start < end) {
        out.case1 = true;
        const int t_p3 = *phase3_start;
        // Earliest projected period past Phase III with TFR at or above
        // the ultimate level.
        int t_u = 0;
        for (int t = std::max(1, t_p3 + 1); t <= end; ++t) {
            if (f(t) >= ultimate_tfr) {
                t_u = t;
                break;
            }
        }
        if (t_u > 0) {
            out.t_g = std::max(t_u, cfg.min_reach_periods);
        } else {
            out.t_g = std::max(end, t_p3 + cfg.phase3_offset_periods);
        }
        return out;
    }

    // Case 2: Phase III not reached by the end period.
    int t_p3_hat;
    if (f(end) <= cfg.low_tfr_threshold) {
        t_p3_hat = end;
    } else {
        if (end < 4) {
            throw InsufficientDataError(
                "TFR extrapolation needs at least four projected periods");
        }
        // Least squares line through the last four periods.
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (int t = end - 3; t <= end; ++t) {
            sx += t;
            sy += f(t);
            sxx += static_cast<double>(t) * t;
            sxy += t * f(t);
        }
        const double denom = 4.0 * sxx - sx * sx;
        const double slope = (4.0 * sxy - sx * sy) / denom;
        const double intercept = (sy - slope * sx) / 4.0;

        const int cap = end + cfg.extrapolation_cap_periods;
        t_p3_hat = cap;
        if (slope < 0.0) {
            for (int t = end + 1; t <= cap; ++t) {
                if (intercept + slope * t <= cfg.low_tfr_threshold) {
                    t_p3_hat = t;
                    break;
                }
            }
        }
    }
    out.t_g = t_p3_hat + cfg.phase3_offset_periods;
    return out;
}

PasfrTrajectory project_pasfr_trajectory(const PasfrPattern& p_r,
                                         const PasfrPattern& p_r_minus_window,
                                         int window_periods, const PasfrPattern& p_g,
                                         const TgEstimate& tg,
                                         std::size_t num_future_periods) {
    if (tg.t_g < 1) {
        throw DegenerateInputError("t_g must lie past the base period");
    }
    PasfrTrajectory out;
    out.t_g = tg.t_g;
    out.patterns.reserve(num_future_periods);

    const double mac_g = mean_age_childbearing(p_g);
    PasfrPattern prev = p_r;
    double mac_prev = mean_age_childbearing(prev);
    bool frozen = false;
    PasfrPattern frozen_pattern = p_r;

    for (std::size_t i = 1; i <= num_future_periods; ++i) {
        const int t = static_cast<int>(i);
        if (frozen) {
            out.patterns.push_back(frozen_pattern);
            continue;
        }
        PasfrPattern current = [&] {
            if (t >= tg.t_g) return p_g;
            const double tau = static_cast<double>(t) / static_cast<double>(tg.t_g);
            const PasfrPattern p1 = pasfr_toward_global(p_r, p_g, tau);
            const PasfrPattern p2 = pasfr_national_trend(p_r, p_r_minus_window, t, window_periods);
            return pasfr_blend(p1, p2, tau);
        }();

        // Late-childbearing exception (Case 1 only): once MAC peaks
        // above the global pattern's MAC inside the convergence window,
        // hold the peak pattern for all remaining periods.
        if (tg.case1 && t <= tg.t_g) {
            const double mac_cur = mean_age_childbearing(current);
            if (mac_cur < mac_prev && mac_prev > mac_g) {
                frozen = true;
                frozen_pattern = prev;
                out.frozen_from = t;
                out.patterns.push_back(frozen_pattern);
                continue;
            }
            mac_prev = mac_cur;
        }
        prev = current;
        out.patterns.push_back(std::move(current));
    }
    return out;
}

std::array<double, kFertilityAgeGroups> asfr_from_pasfr(const PasfrPattern& p, double tfr) {
    if (tfr < 0.0) {
        throw InvalidRateError("TFR must be nonnegative");
    }
    std::array<double, kFertilityAgeGroups> out{};
    for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) {
        out[i] = tfr * p.at(i) / 5.0;
    }
    return out;
}

}  // namespace rateproj
