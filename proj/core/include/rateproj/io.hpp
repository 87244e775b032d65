#ifndef RATEPROJ_IO_HPP_
#define RATEPROJ_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "rateproj/mortality.hpp"
#include "rateproj/pasfr.hpp"
#include "rateproj/trajectories.hpp"

namespace rateproj {

// Fully validated in-memory inputs for one country.
struct CountryData {
    std::string country;
    MortalitySurface mort_f;
    MortalitySurface mort_m;
    PeriodAxis pasfr_periods;                 // historical PASFR axis
    std::vector<PasfrPattern> pasfr_history;  // one pattern per period above
    TrajectoryBundle trajectories;
    std::optional<std::vector<double>> model_bx;  // 28-group, when supplied
};

// Loads and cross-validates the four input CSVs (plus the optional
// model b_x file). Formats:
//   mortality:  country,sex,period,age_start,age_width,mx  (width "open" for the tail)
//   e0:         country,trajectory,period,e0_f,e0_m
//   tfr:        country,trajectory,period,tfr[,phase3_start]
//   pasfr:      country,period,age_start,pasfr
//   model b_x:  country,age_start,bx
// Any malformed row fails hard with a file:line diagnostic.
std::vector<CountryData> load_inputs(const std::string& mortality_csv,
                                     const std::string& e0_csv, const std::string& tfr_csv,
                                     const std::string& pasfr_csv,
                                     const std::string& model_bx_csv = "");

}  // namespace rateproj

#endif  // RATEPROJ_IO_HPP_
