#ifndef RATEPROJ_LIFE_TABLE_HPP_
#define RATEPROJ_LIFE_TABLE_HPP_

#include <vector>

#include "rateproj/mortality.hpp"

namespace rateproj {

// Abridged life table columns with radix l_0 = 1. The open group's A is
// unused (its person-years come directly from L = l/m).
struct LifeTable {
    AgeGrid grid;
    std::vector<double> A;  // avg years lived in the interval by those dying in it
    std::vector<double> q;  // probability of dying; 1 for the open group
    std::vector<double> l;  // survivors at exact age x
    std::vector<double> d;  // deaths in the interval
    std::vector<double> L;  // person-years lived in the interval
    std::vector<double> T;  // person-years lived above exact age x
    std::vector<double> e;  // expectation of life at exact age x

    double e0() const { return e.front(); }
};

// Separation factors A_x: Greville's rate-pattern formula for ages 15
// and over, 2.5 for ages 5 and 10, Coale-Demeny West relations under
// age 5. The value for the open group is set to zero and never used.
std::vector<double> separation_factors(const MortalitySchedule& m, Sex sex);

// Full abridged life table from an m_x schedule on the 28-group grid.
// L_x uses the identity A l_x + (n - A) l_{x+n}; the open group closes
// out with q = 1 and L = l / m.
LifeTable build_life_table(const MortalitySchedule& m, Sex sex);

// Life expectancy at birth for the schedule.
double e0_from_mx(const MortalitySchedule& m, Sex sex);

}  // namespace rateproj

#endif  // RATEPROJ_LIFE_TABLE_HPP_
