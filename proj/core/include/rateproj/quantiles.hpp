#ifndef RATEPROJ_QUANTILES_HPP_
#define RATEPROJ_QUANTILES_HPP_

#include <vector>

namespace rateproj {

// Empirical quantile with linear interpolation between order statistics
// (h = (n-1) q). The input need not be sorted.
double empirical_quantile(std::vector<double> values, double q);

// Quantiles at several levels; sorts once. Levels must lie in (0,1).
std::vector<double> empirical_quantiles(std::vector<double> values,
                                        const std::vector<double>& levels);

}  // namespace rateproj

#endif  // RATEPROJ_QUANTILES_HPP_
