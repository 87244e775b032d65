#ifndef RATEPROJ_TRAJECTORIES_HPP_
#define RATEPROJ_TRAJECTORIES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "rateproj/error.hpp"
#include "rateproj/period.hpp"

namespace rateproj {

// One sampled path of life expectancy at birth by sex, aligned to the
// bundle's future period axis.
struct E0Trajectory {
    int id = 0;
    std::vector<double> e0_f;  // years
    std::vector<double> e0_m;  // years
};

// One sampled TFR path; phase3_start_year marks the first period of
// Phase III when known for this trajectory.
struct TfrTrajectory {
    int id = 0;
    std::vector<double> tfr;  // children per woman
    std::optional<int> phase3_start_year;
};

// Per-country trajectory inputs over a shared contiguous run of future
// 5-year periods.
class TrajectoryBundle {
public:
    TrajectoryBundle(std::string country, PeriodAxis future_periods,
                     std::vector<E0Trajectory> e0, std::vector<TfrTrajectory> tfr)
        : country_(std::move(country)),
          future_(std::move(future_periods)),
          e0_(std::move(e0)),
          tfr_(std::move(tfr)) {
        for (const auto& t : e0_) {
            if (t.e0_f.size() != future_.size() || t.e0_m.size() != future_.size()) {
                throw ValidationError("e0 trajectory " + std::to_string(t.id) +
                                      " does not cover the full future period axis");
            }
            for (std::size_t i = 0; i < future_.size(); ++i) {
                if (t.e0_f[i] <= 20.0 || t.e0_f[i] >= 120.0 || t.e0_m[i] <= 20.0 ||
                    t.e0_m[i] >= 120.0) {
                    throw ValidationError("e0 out of (20,120) in trajectory " +
                                          std::to_string(t.id) + ", period " +
                                          future_.at(i).label);
                }
            }
        }
        for (const auto& t : tfr_) {
            if (t.tfr.size() != future_.size()) {
                throw ValidationError("TFR trajectory " + std::to_string(t.id) +
                                      " does not cover the full future period axis");
            }
            for (double f : t.tfr) {
                if (f < 0.0) {
                    throw ValidationError("negative TFR in trajectory " + std::to_string(t.id));
                }
            }
        }
    }

    const std::string& country() const { return country_; }
    const PeriodAxis& future_periods() const { return future_; }
    const std::vector<E0Trajectory>& e0_trajectories() const { return e0_; }
    const std::vector<TfrTrajectory>& tfr_trajectories() const { return tfr_; }

private:
    std::string country_;
    PeriodAxis future_;
    std::vector<E0Trajectory> e0_;
    std::vector<TfrTrajectory> tfr_;
};

}  // namespace rateproj

#endif  // RATEPROJ_TRAJECTORIES_HPP_
