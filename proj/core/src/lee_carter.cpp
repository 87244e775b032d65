#include "rateproj/lee_carter.hpp"

#include <cmath>
#include <numbers>

#include "rateproj/error.hpp"
#include "rateproj/numeric.hpp"

namespace rateproj {

const char* to_string(AxMethod m) {
    switch (m) {
        case AxMethod::Average: return "average";
        case AxMethod::Latest: return "latest";
        case AxMethod::LatestSmoothed: return "latest_smoothed";
        case AxMethod::HivInterpolated: return "hiv_interpolated";
    }
    return "?";
}

AxMethod ax_method_from_string(const std::string& s) {
    if (s == "average") return AxMethod::Average;
    if (s == "latest") return AxMethod::Latest;
    if (s == "latest_smoothed") return AxMethod::LatestSmoothed;
    if (s == "hiv_interpolated") return AxMethod::HivInterpolated;
    throw ValidationError("unknown ax_method '" + s + "'");
}

std::vector<double> estimate_ax(const MortalitySurface& surface, AxMethod method) {
    const std::size_t n = surface.grid().size();
    switch (method) {
        case AxMethod::Average: {
            std::vector<double> a(n, 0.0);
            for (const auto& sched : surface.schedules()) {
                const auto lm = sched.log_rates();
                for (std::size_t x = 0; x < n; ++x) a[x] += lm[x];
            }
            const double T = static_cast<double>(surface.num_periods());
            for (double& v : a) v /= T;
            return a;
        }
        case AxMethod::Latest:
            return surface.latest().log_rates();
        case AxMethod::LatestSmoothed:
            return smooth_over_age(surface.latest().log_rates(), /*preserve_first=*/true);
        case AxMethod::HivInterpolated:
            throw DegenerateInputError(
                "hiv_interpolated baselines are period-specific; use the HIV projection path");
    }
    throw DegenerateInputError("unknown ax method");
}

std::pair<std::vector<double>, std::vector<double>> estimate_kt_bx(
    const MortalitySurface& surface, const std::vector<double>& a_x) {
    const std::size_t n = surface.grid().size();
    const std::size_t T = surface.num_periods();
    if (a_x.size() != n) {
        throw DegenerateInputError("a_x length does not match the surface grid");
    }

    std::vector<std::vector<double>> dev(T);  // log m - a_x per period
    std::vector<double> k(T, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        dev[t] = surface.schedule(t).log_rates();
        for (std::size_t x = 0; x < n; ++x) {
            dev[t][x] -= a_x[x];
            k[t] += dev[t][x];
        }
    }

    double k2 = 0.0;
    for (double v : k) k2 += v * v;
    if (k2 < 1e-24) {
        throw DegenerateTrendError("no time variation in the surface: k(t) is identically zero");
    }

    std::vector<double> b(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        double num = 0.0;
        for (std::size_t t = 0; t < T; ++t) num += dev[t][x] * k[t];
        b[x] = num / k2;
    }

    // Enforce the sum(b) = 1 identification; scale k inversely so the
    // fitted log-rates b_x k_t are unchanged.
    double bsum = 0.0;
    for (double v : b) bsum += v;
    if (std::abs(bsum) < 1e-12) {
        throw DegenerateTrendError("b_x sums to zero; surface has no coherent age trend");
    }
    for (double& v : b) v /= bsum;
    for (double& v : k) v *= bsum;
    return {k, b};
}

std::vector<double> coherent_bx(const std::vector<double>& b_f,
                                const std::vector<double>& b_m) {
    if (b_f.size() != b_m.size()) {
        throw DegenerateInputError("b_x length mismatch between sexes");
    }
    std::vector<double> out(b_f.size());
    for (std::size_t i = 0; i < b_f.size(); ++i) out[i] = 0.5 * (b_f[i] + b_m[i]);
    return out;
}

std::vector<double> ultimate_bux(const std::vector<double>& b_x) {
    if (b_x.size() != kFullGridSize) {
        throw DegenerateInputError("ultimate b_x requires the 28-group grid");
    }
    // Groups 15-19 ... 60-64 are indices 4..13; 65-69 is index 14.
    constexpr std::size_t kYoungFirst = 4;
    constexpr std::size_t kYoungLast = 13;
    constexpr std::size_t kOldFirst = 14;

    double bar = 0.0;
    for (std::size_t i = kYoungFirst; i <= kYoungLast; ++i) bar += b_x[i];
    bar /= 10.0;

    if (b_x[kOldFirst] == 0.0) {
        throw InvalidRateError("b_x for the 65-69 group is zero; ultimate schedule undefined");
    }

    std::vector<double> bux(kFullGridSize);
    for (std::size_t i = 0; i <= kYoungLast; ++i) bux[i] = bar;
    const double scale = bar / b_x[kOldFirst];
    for (std::size_t i = kOldFirst; i < kFullGridSize; ++i) bux[i] = b_x[i] * scale;

    double sum = 0.0;
    for (double v : bux) sum += v;
    if (std::abs(sum) < 1e-12) {
        throw InvalidRateError("ultimate b_x sums to zero");
    }
    for (double& v : bux) v /= sum;
    return bux;
}

double rotation_weight(const RotationSchedule& schedule, double e0) {
    if (e0 < schedule.e0_start) return 0.0;
    if (e0 >= schedule.e0_ultimate) return 1.0;
    const double wp = (e0 - schedule.e0_start) / (schedule.e0_ultimate - schedule.e0_start);
    const double s = std::sin(std::numbers::pi / 2.0 * (2.0 * wp - 1.0));
    return std::sqrt(0.5 * (1.0 + s));
}

std::vector<double> rotated_bx(const RotationSchedule& schedule, double e0) {
    if (schedule.b_x.size() != schedule.b_ux.size()) {
        throw DegenerateInputError("rotation schedule b_x/b_ux length mismatch");
    }
    if (e0 < schedule.e0_start) return schedule.b_x;
    if (e0 >= schedule.e0_ultimate) return schedule.b_ux;
    const double w = rotation_weight(schedule, e0);
    std::vector<double> out(schedule.b_x.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (1.0 - w) * schedule.b_x[i] + w * schedule.b_ux[i];
    }
    return out;
}

}  // namespace rateproj
