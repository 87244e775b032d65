#ifndef RATEPROJ_PASFR_HPP_
#define RATEPROJ_PASFR_HPP_

#include <array>
#include <cstddef>

namespace rateproj {

inline constexpr std::size_t kFertilityAgeGroups = 7;

// Age-group start ages 15, 20, ..., 45 and midpoints 17.5 ... 47.5.
inline constexpr std::array<double, kFertilityAgeGroups> kFertilityAgeStarts = {
    15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0};
inline constexpr std::array<double, kFertilityAgeGroups> kFertilityAgeMidpoints = {
    17.5, 22.5, 27.5, 32.5, 37.5, 42.5, 47.5};

// Proportionate age-specific fertility over ages 15-19 ... 45-49.
// Entries lie in [0,1] and sum to one within 1e-9.
class PasfrPattern {
public:
    explicit PasfrPattern(std::array<double, kFertilityAgeGroups> proportions);

    // Divides a nonnegative vector by its sum; rejects all-zero input.
    static PasfrPattern normalized(const std::array<double, kFertilityAgeGroups>& raw);

    const std::array<double, kFertilityAgeGroups>& proportions() const { return p_; }
    double at(std::size_t i) const { return p_[i]; }

    bool operator==(const PasfrPattern&) const = default;

private:
    std::array<double, kFertilityAgeGroups> p_;
};

}  // namespace rateproj

#endif  // RATEPROJ_PASFR_HPP_
