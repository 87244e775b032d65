#ifndef RATEPROJ_AGE_GRID_HPP_
#define RATEPROJ_AGE_GRID_HPP_

#include <cstddef>
#include <vector>

namespace rateproj {

// One abridged age group. The last group of a grid is open (unbounded);
// open groups have width == kOpenWidth.
struct AgeGroup {
    double start = 0.0;  // years
    double width = 0.0;  // years; kOpenWidth for the open group

    static constexpr double kOpenWidth = -1.0;

    bool open() const { return width == kOpenWidth; }

    // Midpoint of a closed group; the open group reports its start age.
    double midpoint() const { return open() ? start : start + width / 2.0; }

    bool operator==(const AgeGroup&) const = default;
};

// Contiguous, strictly increasing abridged age axis ending in one open group.
// Widths follow the 1/4/5 abridged convention.
class AgeGrid {
public:
    explicit AgeGrid(std::vector<AgeGroup> groups);

    // {0-1, 1-4, 5-9, ..., 125-129, 130+}: 28 groups.
    static AgeGrid canonical_full();
    // Observed grid ending in an open interval at `open_start` (85 or 100).
    static AgeGrid observed(double open_start);

    std::size_t size() const { return groups_.size(); }
    const AgeGroup& group(std::size_t i) const { return groups_[i]; }
    const std::vector<AgeGroup>& groups() const { return groups_; }

    double open_start() const { return groups_.back().start; }

    // Index of the group containing `age`, or size() if past the open start
    // matches the open group.
    std::size_t index_of_start(double start_age) const;
    bool has_group_starting(double start_age) const;

    bool operator==(const AgeGrid&) const = default;

private:
    std::vector<AgeGroup> groups_;
};

// Number of groups in the canonical full grid.
inline constexpr std::size_t kFullGridSize = 28;
// Index of the first group with start age >= 100 in the canonical grid.
inline constexpr std::size_t kFullGridAge100Index = 21;

}  // namespace rateproj

#endif  // RATEPROJ_AGE_GRID_HPP_
