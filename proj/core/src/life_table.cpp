#include "rateproj/life_table.hpp"

#include <cmath>

#include "rateproj/error.hpp"

namespace rateproj {

namespace {

constexpr double kInfantMortalityBreak = 0.107;
constexpr double kClosedQCap = 1.0 - 1e-12;

}  // namespace

std::vector<double> separation_factors(const MortalitySchedule& m, Sex sex) {
    if (m.size() != kFullGridSize) {
        throw DegenerateInputError("separation factors require the 28-group grid");
    }
    for (double r : m.rates()) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw InvalidRateError("separation factors require positive finite rates");
        }
    }
    const auto& rates = m.rates();
    const bool male = sex == Sex::Male;
    std::vector<double> A(kFullGridSize, 0.0);

    // Under 5: Coale-Demeny West relations driven by infant mortality.
    const double m0 = rates[0];
    if (m0 >= kInfantMortalityBreak) {
        A[0] = male ? 0.33 : 0.35;
        A[1] = male ? 1.352 : 1.361;
    } else {
        A[0] = male ? 0.045 + 2.684 * m0 : 0.053 + 2.800 * m0;
        A[1] = male ? 1.651 - 2.816 * m0 : 1.522 - 1.518 * m0;
    }

    // Ages 5-9 and 10-14.
    A[2] = 2.5;
    A[3] = 2.5;

    // Ages 15-19 through 125-129 via Greville. At 15-19 the lower
    // neighbor is 10-14; at the last closed group the upper neighbor is
    // the open-group rate.
    for (std::size_t i = 4; i < kFullGridSize - 1; ++i) {
        const double lower = rates[i - 1];
        const double upper = rates[i + 1];
        const double k = 0.1 * std::log(upper / lower);
        A[i] = 2.5 - (25.0 / 12.0) * (rates[i] - k);
    }

    // Open group: A unused, person-years handled as l/m directly.
    return A;
}

LifeTable build_life_table(const MortalitySchedule& m, Sex sex) {
    const std::size_t n = m.size();
    LifeTable lt{m.grid(), separation_factors(m, sex), {}, {}, {}, {}, {}, {}};
    lt.q.resize(n);
    lt.l.resize(n);
    lt.d.resize(n);
    lt.L.resize(n);
    lt.T.resize(n);
    lt.e.resize(n);

    const auto& rates = m.rates();
    for (std::size_t i = 0; i < n; ++i) {
        const AgeGroup& g = m.grid().group(i);
        if (g.open()) {
            lt.q[i] = 1.0;
        } else {
            const double w = g.width;
            const double q = w * rates[i] / (1.0 + (w - lt.A[i]) * rates[i]);
            lt.q[i] = std::min(q, kClosedQCap);
        }
    }

    lt.l[0] = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        lt.l[i + 1] = lt.l[i] * (1.0 - lt.q[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        lt.d[i] = lt.l[i] - lt.l[i + 1];
    }
    lt.d[n - 1] = lt.l[n - 1];

    for (std::size_t i = 0; i < n; ++i) {
        const AgeGroup& g = m.grid().group(i);
        if (g.open()) {
            lt.L[i] = lt.l[i] / rates[i];
        } else {
            lt.L[i] = lt.A[i] * lt.l[i] + (g.width - lt.A[i]) * lt.l[i + 1];
        }
    }

    double cum = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        cum += lt.L[i];
        lt.T[i] = cum;
    }
    for (std::size_t i = 0; i < n; ++i) {
        lt.e[i] = lt.T[i] / lt.l[i];
    }
    return lt;
}

double e0_from_mx(const MortalitySchedule& m, Sex sex) {
    return build_life_table(m, sex).e0();
}

}  // namespace rateproj
