#include "rateproj/synthetic.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "rateproj/age_grid.hpp"
#include "rateproj/csv.hpp"
#include "rateproj/error.hpp"
#include "rateproj/pasfr.hpp"
#include "rateproj/period.hpp"

namespace rateproj {

namespace {

// Uniform in [0,1) drawn directly from the engine's 64-bit output so
// generated files do not depend on the standard library's distribution
// implementations.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double next_normal(std::mt19937_64& rng) {
    // Box-Muller; one draw per call keeps the stream simple.
    const double u1 = std::max(next_uniform(rng), 1e-12);
    const double u2 = next_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Smooth baseline female mortality by age-group midpoint.
double baseline_mx(double age_start, double age_mid) {
    if (age_start < 1.0) return 0.045;
    if (age_start < 5.0) return 0.004;
    return 0.00028 * std::exp(0.074 * (age_mid - 5.0));
}

}  // namespace

void write_synthetic_dataset(const std::string& dir, const SyntheticSpec& spec) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::mt19937_64 rng(spec.seed);

    const AgeGrid grid = AgeGrid::observed(100.0);
    const int num_hist = (spec.jumpoff_year - spec.first_history_year) / 5 + 1;

    // Age sensitivities declining with age, normalized to sum 1.
    std::vector<double> bx(grid.size());
    double bsum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        bx[i] = 1.4 - grid.group(i).midpoint() / 140.0;
        bsum += bx[i];
    }
    for (double& v : bx) v /= bsum;

    // Historical mortality from a Lee-Carter-style surface with a
    // declining index and mild noise.
    {
        std::vector<std::vector<std::string>> rows;
        for (int t = 0; t < num_hist; ++t) {
            const int year = spec.first_history_year + 5 * t;
            const std::string label = period_label(year);
            const double k = 14.0 - 1.25 * t;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const AgeGroup& g = grid.group(i);
                const double base = std::log(baseline_mx(g.start, g.midpoint()));
                const double noise = 0.01 * next_normal(rng);
                const double log_mf = base + bx[i] * k + noise;
                const double log_mm = log_mf + 0.25 + 0.002 * g.midpoint();
                const std::string width =
                    g.open() ? "open" : format_number(g.width);
                rows.push_back({spec.country, "F", label, format_number(g.start), width,
                                format_number(std::exp(log_mf))});
                rows.push_back({spec.country, "M", label, format_number(g.start), width,
                                format_number(std::exp(log_mm))});
            }
        }
        write_csv(dir + "/mortality.csv",
                  {"country", "sex", "period", "age_start", "age_width", "mx"}, rows);
    }

    const int first_future = spec.jumpoff_year + 5;

    // e0 trajectories: smooth rise with trajectory-specific drift.
    {
        std::vector<std::vector<std::string>> rows;
        for (int id = 1; id <= spec.num_trajectories; ++id) {
            const double drift = 0.75 + 0.35 * next_uniform(rng);
            const double gap0 = 3.0 + 1.5 * next_uniform(rng);
            double wobble = 0.0;
            for (int j = 0; j < spec.num_future_periods; ++j) {
                wobble += 0.25 * next_normal(rng);
                const double e0f = 79.0 + drift * (j + 1) + 0.3 * wobble;
                const double gap = gap0 * (1.0 - 0.02 * j);
                const double e0m = e0f - gap;
                rows.push_back({spec.country, std::to_string(id),
                                period_label(first_future + 5 * j), format_number(e0f),
                                format_number(e0m)});
            }
        }
        write_csv(dir + "/e0_trajectories.csv",
                  {"country", "trajectory", "period", "e0_f", "e0_m"}, rows);
    }

    // TFR trajectories declining toward ~1.7, with Phase III flagged
    // once the decline bottoms out (left blank for a minority).
    {
        std::vector<std::vector<std::string>> rows;
        for (int id = 1; id <= spec.num_trajectories; ++id) {
            const double floor_tfr = 1.55 + 0.4 * next_uniform(rng);
            const double pace = 0.10 + 0.08 * next_uniform(rng);
            const bool flag_phase3 = next_uniform(rng) < 0.8;
            int phase3_year = 0;
            std::vector<double> tfr(spec.num_future_periods);
            double f = 2.4 + 0.4 * next_uniform(rng);
            for (int j = 0; j < spec.num_future_periods; ++j) {
                f = std::max(floor_tfr, f - pace) + 0.02 * next_normal(rng);
                if (f < 0.05) f = 0.05;
                tfr[j] = f;
                if (phase3_year == 0 && f <= floor_tfr + 0.05) {
                    phase3_year = first_future + 5 * j;
                }
            }
            for (int j = 0; j < spec.num_future_periods; ++j) {
                std::string p3;
                if (flag_phase3 && phase3_year != 0) p3 = period_label(phase3_year);
                rows.push_back({spec.country, std::to_string(id),
                                period_label(first_future + 5 * j), format_number(tfr[j]), p3});
            }
        }
        write_csv(dir + "/tfr_trajectories.csv",
                  {"country", "trajectory", "period", "tfr", "phase3_start"}, rows);
    }

    // PASFR history drifting toward later childbearing over four
    // observed periods.
    {
        std::vector<std::vector<std::string>> rows;
        const int num_pasfr_hist = 4;
        for (int t = 0; t < num_pasfr_hist; ++t) {
            const int year = spec.jumpoff_year - 5 * (num_pasfr_hist - 1 - t);
            std::array<double, kFertilityAgeGroups> raw{};
            const double shift = 0.4 * t;  // peak moves toward older groups
            for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) {
                const double center = 2.0 + 0.2 * shift;
                const double z = (static_cast<double>(i) - center) / 1.4;
                raw[i] = std::exp(-0.5 * z * z);
            }
            const PasfrPattern p = PasfrPattern::normalized(raw);
            for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) {
                rows.push_back({spec.country, period_label(year),
                                std::to_string(static_cast<int>(kFertilityAgeStarts[i])),
                                format_number(p.at(i))});
            }
        }
        write_csv(dir + "/pasfr_history.csv", {"country", "period", "age_start", "pasfr"},
                  rows);
    }

    // Ready-to-run configuration.
    {
        std::ofstream cfg(dir + "/config.txt");
        if (!cfg) throw ValidationError("cannot write " + dir + "/config.txt");
        cfg << "mortality_file = " << dir << "/mortality.csv\n"
            << "e0_file = " << dir << "/e0_trajectories.csv\n"
            << "tfr_file = " << dir << "/tfr_trajectories.csv\n"
            << "pasfr_file = " << dir << "/pasfr_history.csv\n"
            << "out_dir = " << dir << "/out\n"
            << "workers = 1\n";
    }
}

}  // namespace rateproj
