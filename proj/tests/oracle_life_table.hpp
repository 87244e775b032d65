// Independent re-derivation of the abridged life table used to
// cross-check the library implementation. Deliberately coded from the
// column definitions in a different style (single forward sweep,
// scalar state) rather than sharing any code with the library.
#ifndef RATEPROJ_TESTS_ORACLE_LIFE_TABLE_HPP_
#define RATEPROJ_TESTS_ORACLE_LIFE_TABLE_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct Columns {
    std::vector<double> A, q, l, d, L, T, e;
};

// Separation factors on the canonical 28-group grid
// {0-1, 1-4, 5-9, ..., 125-129, 130+} for rates mx (size 28).
inline std::vector<double> separation(const std::vector<double>& mx, bool male) {
    std::vector<double> A(mx.size(), 0.0);
    const double m0 = mx[0];
    if (male) {
        A[0] = m0 >= 0.107 ? 0.33 : 0.045 + 2.684 * m0;
        A[1] = m0 >= 0.107 ? 1.352 : 1.651 - 2.816 * m0;
    } else {
        A[0] = m0 >= 0.107 ? 0.35 : 0.053 + 2.800 * m0;
        A[1] = m0 >= 0.107 ? 1.361 : 1.522 - 1.518 * m0;
    }
    A[2] = 2.5;
    A[3] = 2.5;
    for (std::size_t i = 4; i + 1 < mx.size(); ++i) {
        // Greville: A = 2.5 - 25/12 (m - k), k = ln(m_{x+5}/m_{x-5}) / 10.
        A[i] = 2.5 - 25.0 / 12.0 * (mx[i] - std::log(mx[i + 1] / mx[i - 1]) / 10.0);
    }
    return A;
}

inline Columns life_table(const std::vector<double>& mx, bool male) {
    const std::size_t n = mx.size();
    Columns c;
    c.A = separation(mx, male);
    c.q.assign(n, 0.0);
    c.l.assign(n, 0.0);
    c.d.assign(n, 0.0);
    c.L.assign(n, 0.0);
    c.T.assign(n, 0.0);
    c.e.assign(n, 0.0);

    double survivors = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double width = i == 0 ? 1.0 : (i == 1 ? 4.0 : 5.0);
        c.l[i] = survivors;
        if (i + 1 == n) {
            c.q[i] = 1.0;
            c.d[i] = survivors;
            c.L[i] = survivors / mx[i];
        } else {
            double q = width * mx[i] / (1.0 + (width - c.A[i]) * mx[i]);
            if (q > 1.0 - 1e-12) q = 1.0 - 1e-12;
            c.q[i] = q;
            c.d[i] = survivors * q;
            const double next = survivors - c.d[i];
            c.L[i] = c.A[i] * survivors + (width - c.A[i]) * next;
            survivors = next;
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        c.T[i] = c.L[i] + (i + 1 < n ? c.T[i + 1] : 0.0);
        c.e[i] = c.T[i] / c.l[i];
    }
    return c;
}

inline double e0(const std::vector<double>& mx, bool male) {
    return life_table(mx, male).e[0];
}

}  // namespace oracle

#endif  // RATEPROJ_TESTS_ORACLE_LIFE_TABLE_HPP_
