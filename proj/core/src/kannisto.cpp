#include "rateproj/kannisto.hpp"

#include <array>
#include <cmath>
#include <string>

#include "rateproj/error.hpp"
#include "rateproj/numeric.hpp"

namespace rateproj {

namespace {

// Solves the n x n normal equations X'X beta = X'y by Gaussian
// elimination with partial pivoting; n <= 3 here.
template <std::size_t N>
std::array<double, N> solve_normal_equations(const std::vector<std::array<double, N>>& rows,
                                             const std::vector<double>& y) {
    std::array<std::array<double, N + 1>, N> aug{};
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) aug[i][j] += rows[r][i] * rows[r][j];
            aug[i][N] += rows[r][i] * y[r];
        }
    }
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r) {
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        }
        if (std::abs(aug[piv][col]) < 1e-14) {
            throw InsufficientDataError("singular design in Kannisto regression");
        }
        std::swap(aug[col], aug[piv]);
        for (std::size_t r = 0; r < N; ++r) {
            if (r == col) continue;
            const double f = aug[r][col] / aug[col][col];
            for (std::size_t c = col; c <= N; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    std::array<double, N> beta{};
    for (std::size_t i = 0; i < N; ++i) beta[i] = aug[i][N] / aug[i][i];
    return beta;
}

// Midpoints and logit responses of the closed groups with start in
// [80, 100).
void collect_fit_points(const MortalitySchedule& m, std::vector<double>& ages,
                        std::vector<double>& logits) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        const AgeGroup& g = m.grid().group(i);
        if (g.open() || g.start < 80.0 || g.start >= 100.0) continue;
        const double rate = m.rate(i);
        if (!(rate > 0.0 && rate < 1.0)) {
            throw InvalidRateError("mortality rate at age " + std::to_string(g.start) +
                                   " has no finite logit");
        }
        ages.push_back(g.midpoint());
        logits.push_back(std::log(rate / (1.0 - rate)));
    }
    if (ages.size() < 2) {
        throw InsufficientDataError(
            "Kannisto fit needs at least two closed groups with start age in [80,100)");
    }
}

double kannisto_rate(double c, double d, double age) {
    return inverse_logit(std::log(c) + d * age);
}

}  // namespace

KannistoCoeffs fit_coherent_kannisto(const MortalitySchedule& m_f,
                                     const MortalitySchedule& m_m) {
    if (!(m_f.grid() == m_m.grid())) {
        throw DegenerateInputError("coherent Kannisto fit requires a shared age grid");
    }
    std::vector<double> ages_f, logits_f, ages_m, logits_m;
    collect_fit_points(m_f, ages_f, logits_f);
    collect_fit_points(m_m, ages_m, logits_m);

    std::vector<std::array<double, 3>> rows;
    std::vector<double> y;
    for (std::size_t i = 0; i < ages_f.size(); ++i) {
        rows.push_back({1.0, 0.0, ages_f[i]});
        y.push_back(logits_f[i]);
    }
    for (std::size_t i = 0; i < ages_m.size(); ++i) {
        rows.push_back({1.0, 1.0, ages_m[i]});
        y.push_back(logits_m[i]);
    }
    const auto beta = solve_normal_equations<3>(rows, y);

    KannistoCoeffs out;
    out.c_f = std::exp(beta[0]);
    out.c_m = std::exp(beta[0] + beta[1]);
    out.d = beta[2];
    out.fit_ages = ages_f;
    out.fit_ages.insert(out.fit_ages.end(), ages_m.begin(), ages_m.end());
    return out;
}

std::pair<double, double> fit_classic_kannisto(const MortalitySchedule& m) {
    std::vector<double> ages, logits;
    collect_fit_points(m, ages, logits);
    std::vector<std::array<double, 2>> rows;
    for (double a : ages) rows.push_back({1.0, a});
    const auto beta = solve_normal_equations<2>(rows, logits);
    return {std::exp(beta[0]), beta[1]};
}

namespace {

MortalitySchedule extend_schedule(const MortalitySchedule& obs, double c, double d) {
    const AgeGrid full = AgeGrid::canonical_full();
    const double obs_open_start = obs.grid().open_start();
    std::vector<double> rates(full.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        const AgeGroup& g = full.group(i);
        const bool fitted = g.open() || g.start >= 100.0 || g.start >= obs_open_start;
        if (fitted) {
            const double x = g.open() ? 130.0 : g.midpoint();
            rates[i] = kannisto_rate(c, d, x);
        } else {
            const std::size_t j = obs.grid().index_of_start(g.start);
            if (j >= obs.size()) {
                throw DegenerateInputError("observed grid misses closed group at age " +
                                           std::to_string(g.start));
            }
            rates[i] = obs.rate(j);
        }
    }
    return MortalitySchedule(full, std::move(rates));
}

}  // namespace

std::pair<MortalitySurface, MortalitySurface> extend_to_130(const MortalitySurface& surface_f,
                                                            const MortalitySurface& surface_m,
                                                            KannistoMode mode) {
    if (surface_f.grid().open_start() < 85.0) {
        throw DegenerateInputError("observed open age group must start at 85 or above");
    }
    if (surface_f.num_periods() != surface_m.num_periods()) {
        throw DegenerateInputError("female and male surfaces cover different periods");
    }
    std::vector<MortalitySchedule> out_f, out_m;
    for (std::size_t t = 0; t < surface_f.num_periods(); ++t) {
        try {
            if (mode == KannistoMode::Coherent) {
                const KannistoCoeffs k =
                    fit_coherent_kannisto(surface_f.schedule(t), surface_m.schedule(t));
                out_f.push_back(extend_schedule(surface_f.schedule(t), k.c_f, k.d));
                out_m.push_back(extend_schedule(surface_m.schedule(t), k.c_m, k.d));
            } else {
                const auto [cf, df] = fit_classic_kannisto(surface_f.schedule(t));
                const auto [cm, dm] = fit_classic_kannisto(surface_m.schedule(t));
                out_f.push_back(extend_schedule(surface_f.schedule(t), cf, df));
                out_m.push_back(extend_schedule(surface_m.schedule(t), cm, dm));
            }
        } catch (const InvalidRateError& e) {
            throw InvalidRateError("period " + surface_f.periods().at(t).label + ": " + e.what());
        } catch (const InsufficientDataError& e) {
            throw InsufficientDataError("period " + surface_f.periods().at(t).label + ": " +
                                        e.what());
        }
    }
    return {MortalitySurface(Sex::Female, surface_f.periods(), std::move(out_f)),
            MortalitySurface(Sex::Male, surface_m.periods(), std::move(out_m))};
}

}  // namespace rateproj
