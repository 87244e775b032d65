#include "rateproj/period.hpp"

#include <cstdlib>

#include "rateproj/error.hpp"

namespace rateproj {

Period parse_period(const std::string& label) {
    const auto dash = label.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= label.size()) {
        throw ValidationError("malformed period label '" + label + "' (expected YYYY-YYYY)");
    }
    char* end = nullptr;
    const long a = std::strtol(label.c_str(), &end, 10);
    if (end != label.c_str() + dash) {
        throw ValidationError("malformed period label '" + label + "'");
    }
    const long b = std::strtol(label.c_str() + dash + 1, &end, 10);
    if (*end != '\0') {
        throw ValidationError("malformed period label '" + label + "'");
    }
    if (b - a != 5) {
        throw ValidationError("period '" + label + "' does not span five years");
    }
    return Period{label, static_cast<int>(a)};
}

std::string period_label(int start_year) {
    return std::to_string(start_year) + "-" + std::to_string(start_year + 5);
}

PeriodAxis::PeriodAxis(std::vector<Period> periods) : periods_(std::move(periods)) {
    for (std::size_t i = 0; i + 1 < periods_.size(); ++i) {
        if (periods_[i + 1].start_year != periods_[i].start_year + 5) {
            throw ValidationError("periods not contiguous between '" + periods_[i].label +
                                  "' and '" + periods_[i + 1].label + "'");
        }
    }
}

std::size_t PeriodAxis::index_of(int start_year) const {
    for (std::size_t i = 0; i < periods_.size(); ++i) {
        if (periods_[i].start_year == start_year) return i;
    }
    return periods_.size();
}

}  // namespace rateproj
