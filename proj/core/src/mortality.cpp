#include "rateproj/mortality.hpp"

#include <cmath>

#include "rateproj/error.hpp"

namespace rateproj {

const char* to_string(Sex s) { return s == Sex::Female ? "F" : "M"; }

Sex sex_from_string(const std::string& s) {
    if (s == "F" || s == "f") return Sex::Female;
    if (s == "M" || s == "m") return Sex::Male;
    throw ValidationError("unknown sex code '" + s + "' (expected F or M)");
}

MortalitySchedule::MortalitySchedule(AgeGrid grid, std::vector<double> rates)
    : grid_(std::move(grid)), rates_(std::move(rates)) {
    if (rates_.size() != grid_.size()) {
        throw DegenerateInputError("rate vector length does not match age grid");
    }
    for (std::size_t i = 0; i < rates_.size(); ++i) {
        const double m = rates_[i];
        const bool open_tail = grid_.group(i).open();
        if (std::isnan(m) && open_tail) continue;  // missing tail, filled by extension
        if (!std::isfinite(m) || m <= 0.0) {
            throw InvalidRateError("invalid mortality rate at age start " +
                                   std::to_string(grid_.group(i).start));
        }
    }
}

std::vector<double> MortalitySchedule::log_rates() const {
    std::vector<double> out(rates_.size());
    for (std::size_t i = 0; i < rates_.size(); ++i) out[i] = std::log(rates_[i]);
    return out;
}

MortalitySurface::MortalitySurface(Sex sex, PeriodAxis periods,
                                   std::vector<MortalitySchedule> schedules)
    : sex_(sex), periods_(std::move(periods)), schedules_(std::move(schedules)) {
    if (schedules_.size() < 2) {
        throw DegenerateInputError("mortality surface needs at least two periods");
    }
    if (schedules_.size() != periods_.size()) {
        throw DegenerateInputError("period axis and schedule count differ");
    }
    for (const auto& s : schedules_) {
        if (!(s.grid() == schedules_.front().grid())) {
            throw DegenerateInputError("all periods of a surface must share one age grid");
        }
    }
}

}  // namespace rateproj
