#ifndef RATEPROJ_PERIOD_HPP_
#define RATEPROJ_PERIOD_HPP_

#include <string>
#include <vector>

namespace rateproj {

// All time arithmetic runs on 5-year periods labeled "YYYY-YYYY"
// (e.g. "2010-2015"); the label's first year is the period start.
struct Period {
    std::string label;
    int start_year = 0;

    int end_year() const { return start_year + 5; }

    bool operator==(const Period&) const = default;
};

// Parses "YYYY-YYYY"; throws ValidationError on malformed labels or a
// span other than five years.
Period parse_period(const std::string& label);

// Label for the 5-year period beginning at start_year.
std::string period_label(int start_year);

// Ordered contiguous run of 5-year periods.
class PeriodAxis {
public:
    PeriodAxis() = default;
    explicit PeriodAxis(std::vector<Period> periods);

    std::size_t size() const { return periods_.size(); }
    bool empty() const { return periods_.empty(); }
    const Period& at(std::size_t i) const { return periods_[i]; }
    const Period& front() const { return periods_.front(); }
    const Period& back() const { return periods_.back(); }
    const std::vector<Period>& periods() const { return periods_; }

    // Index of the period starting at start_year, or size() if absent.
    std::size_t index_of(int start_year) const;

    bool operator==(const PeriodAxis&) const = default;

private:
    std::vector<Period> periods_;
};

}  // namespace rateproj

#endif  // RATEPROJ_PERIOD_HPP_
