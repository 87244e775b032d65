#include "rateproj/mortality_projector.hpp"

#include <cmath>
#include <string>

#include "rateproj/error.hpp"
#include "rateproj/life_table.hpp"
#include "rateproj/numeric.hpp"

namespace rateproj {

namespace {

MortalitySchedule reconstruct_schedule(const std::vector<double>& a_x,
                                       const std::vector<double>& b_x, double k) {
    std::vector<double> rates(a_x.size());
    for (std::size_t i = 0; i < a_x.size(); ++i) {
        rates[i] = std::exp(a_x[i] + b_x[i] * k);
    }
    return MortalitySchedule(AgeGrid::canonical_full(), std::move(rates));
}

double e0_at_k(const std::vector<double>& a_x, const std::vector<double>& b_x, double k,
               Sex sex) {
    return e0_from_mx(reconstruct_schedule(a_x, b_x, k), sex);
}

// Rates over- or underflow at extreme k; a failed evaluation just means
// the bracket cannot expand further in that direction.
bool try_e0_at_k(const std::vector<double>& a_x, const std::vector<double>& b_x, double k,
                 Sex sex, double& out) {
    for (std::size_t i = 0; i < a_x.size(); ++i) {
        const double m = std::exp(a_x[i] + b_x[i] * k);
        if (!(m > 0.0) || !std::isfinite(m)) return false;
    }
    out = e0_at_k(a_x, b_x, k, sex);
    return true;
}

}  // namespace

double solve_k_for_e0(const std::vector<double>& a_x, const std::vector<double>& b_x,
                      double target_e0, Sex sex, const BisectionConfig& cfg) {
    if (a_x.size() != b_x.size()) {
        throw DegenerateInputError("a_x and B_x length mismatch in k solve");
    }
    double lo = cfg.k_lo;
    double hi = cfg.k_hi;
    // e0 decreases in k, so the achievable range is [e0(hi), e0(lo)].
    double e0_lo = e0_at_k(a_x, b_x, lo, sex);
    double e0_hi = e0_at_k(a_x, b_x, hi, sex);
    int doublings = 0;
    while ((target_e0 > e0_lo || target_e0 < e0_hi) && doublings < cfg.max_bracket_doublings) {
        double cand;
        if (target_e0 > e0_lo) {
            if (!try_e0_at_k(a_x, b_x, lo * 2.0, sex, cand)) break;
            lo *= 2.0;
            e0_lo = cand;
        }
        if (target_e0 < e0_hi) {
            if (!try_e0_at_k(a_x, b_x, hi * 2.0, sex, cand)) break;
            hi *= 2.0;
            e0_hi = cand;
        }
        ++doublings;
    }
    if (target_e0 > e0_lo || target_e0 < e0_hi) {
        throw UnbracketedTargetError(
            "target e0 " + std::to_string(target_e0) + " outside achievable range [" +
                std::to_string(e0_hi) + ", " + std::to_string(e0_lo) + "]",
            e0_hi, e0_lo);
    }
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double e0_mid = e0_at_k(a_x, b_x, mid, sex);
        if (std::abs(e0_mid - target_e0) <= cfg.e0_tolerance &&
            hi - lo <= cfg.k_tolerance) {
            return mid;
        }
        if (e0_mid > target_e0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw ConvergenceError("bisection did not reach e0 tolerance within " +
                           std::to_string(cfg.max_iter) + " iterations");
}

std::vector<std::vector<double>> hiv_ax_path(const MortalitySurface& surface,
                                             const PeriodAxis& future_periods,
                                             const MortalityProjectionConfig& cfg) {
    const std::size_t n = surface.grid().size();

    // Smoothed latest baseline, still carrying the epidemic's imprint.
    const std::vector<double> ax_s =
        smooth_over_age(surface.latest().log_rates(), /*preserve_first=*/true);

    // Pre-epidemic average over periods ending by the cutoff year.
    std::vector<double> ax_v(n, 0.0);
    std::size_t used = 0;
    for (std::size_t t = 0; t < surface.num_periods(); ++t) {
        if (surface.periods().at(t).end_year() > cfg.hiv_cutoff_year) continue;
        const auto lm = surface.schedule(t).log_rates();
        for (std::size_t x = 0; x < n; ++x) ax_v[x] += lm[x];
        ++used;
    }
    if (used == 0) {
        throw InsufficientDataError("HIV baseline path needs historical periods ending by " +
                                    std::to_string(cfg.hiv_cutoff_year));
    }
    for (double& v : ax_v) v /= static_cast<double>(used);
    const std::vector<double> ax_u = smooth_over_age(ax_v, /*preserve_first=*/true);

    const int base_start = surface.periods().back().start_year;
    const int target_start = cfg.hiv_target_year - 5;  // period containing the target year
    const double span = static_cast<double>(target_start - base_start);
    if (span <= 0.0) {
        throw DegenerateInputError("HIV target year precedes the jump-off period");
    }

    std::vector<std::vector<double>> out;
    out.reserve(future_periods.size());
    for (const Period& p : future_periods.periods()) {
        double frac = static_cast<double>(p.start_year - base_start) / span;
        if (frac > 1.0) frac = 1.0;  // AIDS-free target holds past 2100
        std::vector<double> a(n);
        for (std::size_t x = 0; x < n; ++x) {
            a[x] = (1.0 - frac) * ax_s[x] + frac * ax_u[x];
        }
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

void check_model_bx(const std::vector<double>& bx) {
    if (bx.size() != kFullGridSize) {
        throw ValidationError("model b_x must cover the 28-group grid");
    }
    double sum = 0.0;
    for (double v : bx) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("model b_x sums to " + std::to_string(sum) + ", expected 1");
    }
}

}  // namespace

MortalityFitProducts fit_mortality_model(const MortalitySurface& extended_f,
                                         const MortalitySurface& extended_m,
                                         const PeriodAxis& future_periods,
                                         const MortalityProjectionConfig& cfg) {
    MortalityFitProducts fit;

    if (cfg.hiv_mode) {
        if (cfg.bx_source != BxSource::ModelLifeTable) {
            throw ValidationError("HIV mode requires a model-life-table b_x");
        }
        check_model_bx(cfg.model_bx);
        fit.b_x = cfg.model_bx;
        fit.b_ux = cfg.model_bx;
        fit.rotate = false;
        fit.ax_f_by_period = hiv_ax_path(extended_f, future_periods, cfg);
        fit.ax_m_by_period = hiv_ax_path(extended_m, future_periods, cfg);
        fit.ax_f = fit.ax_f_by_period.front();
        fit.ax_m = fit.ax_m_by_period.front();
        return fit;
    }

    fit.ax_f = estimate_ax(extended_f, cfg.ax_method);
    fit.ax_m = estimate_ax(extended_m, cfg.ax_method);

    if (cfg.bx_source == BxSource::ModelLifeTable) {
        check_model_bx(cfg.model_bx);
        fit.b_x = cfg.model_bx;
    } else {
        const auto [kf, bf] = estimate_kt_bx(extended_f, fit.ax_f);
        const auto [km, bm] = estimate_kt_bx(extended_m, fit.ax_m);
        fit.b_x = coherent_bx(bf, bm);
    }
    fit.b_ux = ultimate_bux(fit.b_x);
    fit.rotate = true;
    return fit;
}

ProjectedMortality project_trajectory(const MortalityFitProducts& fit,
                                      const std::vector<double>& e0_f,
                                      const std::vector<double>& e0_m,
                                      const MortalityProjectionConfig& cfg) {
    if (e0_f.size() != e0_m.size()) {
        throw DegenerateInputError("female and male e0 trajectories differ in length");
    }
    const std::size_t num_periods = e0_f.size();
    const AgeGrid full = AgeGrid::canonical_full();

    ProjectedMortality out;
    out.m_f.resize(num_periods);
    out.m_m.resize(num_periods);
    out.k_f.resize(num_periods);
    out.k_m.resize(num_periods);

    const RotationSchedule rotation{fit.b_x, fit.b_ux};

    for (std::size_t i = 0; i < num_periods; ++i) {
        const double combined_e0 = 0.5 * (e0_f[i] + e0_m[i]);
        const std::vector<double> bx =
            fit.rotate ? rotated_bx(rotation, combined_e0) : fit.b_x;
        const std::vector<double>& ax_f =
            fit.ax_f_by_period.empty() ? fit.ax_f : fit.ax_f_by_period[i];
        const std::vector<double>& ax_m =
            fit.ax_m_by_period.empty() ? fit.ax_m : fit.ax_m_by_period[i];

        try {
            out.k_f[i] = solve_k_for_e0(ax_f, bx, e0_f[i], Sex::Female, cfg.bisection);
            out.k_m[i] = solve_k_for_e0(ax_m, bx, e0_m[i], Sex::Male, cfg.bisection);
        } catch (const UnbracketedTargetError& err) {
            throw UnbracketedTargetError("future period index " + std::to_string(i) + ": " +
                                             err.what(),
                                         err.achievable_min, err.achievable_max);
        }

        auto& mf = out.m_f[i];
        auto& mm = out.m_m[i];
        mf.resize(full.size());
        mm.resize(full.size());
        for (std::size_t x = 0; x < full.size(); ++x) {
            mf[x] = std::exp(ax_f[x] + bx[x] * out.k_f[i]);
            mm[x] = std::exp(ax_m[x] + bx[x] * out.k_m[i]);
        }

        // Crossover cap: male rates may not drop below female rates at
        // very high ages when male e0 is the lower one.
        if (e0_m[i] < e0_f[i]) {
            for (std::size_t x = 0; x < full.size(); ++x) {
                if (full.group(x).start >= cfg.crossover_cap_age && mm[x] < mf[x]) {
                    mm[x] = mf[x];
                }
            }
        }
    }
    return out;
}

}  // namespace rateproj
