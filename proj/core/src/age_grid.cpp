#include "rateproj/age_grid.hpp"

#include <cmath>
#include <string>

#include "rateproj/error.hpp"

namespace rateproj {

AgeGrid::AgeGrid(std::vector<AgeGroup> groups) : groups_(std::move(groups)) {
    if (groups_.size() < 2) {
        throw DegenerateInputError("age grid needs at least two groups");
    }
    for (std::size_t i = 0; i + 1 < groups_.size(); ++i) {
        const auto& g = groups_[i];
        if (g.open()) {
            throw DegenerateInputError("only the last age group may be open");
        }
        if (g.width <= 0.0) {
            throw DegenerateInputError("closed age group must have positive width");
        }
        const double next_start = g.start + g.width;
        if (std::abs(groups_[i + 1].start - next_start) > 1e-9) {
            throw DegenerateInputError(
                "age groups not contiguous at start " + std::to_string(groups_[i + 1].start));
        }
    }
    if (!groups_.back().open()) {
        throw DegenerateInputError("last age group must be open");
    }
}

AgeGrid AgeGrid::canonical_full() { return observed(130.0); }

AgeGrid AgeGrid::observed(double open_start) {
    std::vector<AgeGroup> groups;
    groups.push_back({0.0, 1.0});
    groups.push_back({1.0, 4.0});
    for (double s = 5.0; s < open_start; s += 5.0) {
        groups.push_back({s, 5.0});
    }
    groups.push_back({open_start, AgeGroup::kOpenWidth});
    return AgeGrid(std::move(groups));
}

std::size_t AgeGrid::index_of_start(double start_age) const {
    for (std::size_t i = 0; i < groups_.size(); ++i) {
        if (std::abs(groups_[i].start - start_age) < 1e-9) return i;
    }
    return groups_.size();
}

bool AgeGrid::has_group_starting(double start_age) const {
    return index_of_start(start_age) < groups_.size();
}

}  // namespace rateproj
