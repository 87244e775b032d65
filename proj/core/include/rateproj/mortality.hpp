#ifndef RATEPROJ_MORTALITY_HPP_
#define RATEPROJ_MORTALITY_HPP_

#include <string>
#include <vector>

#include "rateproj/age_grid.hpp"
#include "rateproj/period.hpp"

namespace rateproj {

enum class Sex { Female, Male };

const char* to_string(Sex s);
Sex sex_from_string(const std::string& s);

// Central death rates m_x on an abridged grid, deaths per person-year.
// Every closed-group rate must be finite and positive; only the open
// tail may be missing (NaN) before Kannisto extension fills it.
class MortalitySchedule {
public:
    MortalitySchedule(AgeGrid grid, std::vector<double> rates);

    const AgeGrid& grid() const { return grid_; }
    const std::vector<double>& rates() const { return rates_; }
    double rate(std::size_t i) const { return rates_[i]; }
    std::size_t size() const { return rates_.size(); }

    std::vector<double> log_rates() const;

private:
    AgeGrid grid_;
    std::vector<double> rates_;
};

// One sex's m_x(t) matrix: a schedule per historical 5-year period, all
// on a shared grid.
class MortalitySurface {
public:
    MortalitySurface(Sex sex, PeriodAxis periods, std::vector<MortalitySchedule> schedules);

    Sex sex() const { return sex_; }
    const PeriodAxis& periods() const { return periods_; }
    const std::vector<MortalitySchedule>& schedules() const { return schedules_; }
    const MortalitySchedule& schedule(std::size_t t) const { return schedules_[t]; }
    const MortalitySchedule& latest() const { return schedules_.back(); }
    const AgeGrid& grid() const { return schedules_.front().grid(); }
    std::size_t num_periods() const { return schedules_.size(); }

private:
    Sex sex_;
    PeriodAxis periods_;
    std::vector<MortalitySchedule> schedules_;
};

}  // namespace rateproj

#endif  // RATEPROJ_MORTALITY_HPP_
