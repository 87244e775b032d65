#ifndef RATEPROJ_SYNTHETIC_HPP_
#define RATEPROJ_SYNTHETIC_HPP_

#include <cstdint>
#include <string>

namespace rateproj {

// Parameters of the bundled synthetic dataset generator. Output is
// fully determined by this struct; the same spec always yields
// byte-identical files.
struct SyntheticSpec {
    std::string country = "Synthland";
    int num_trajectories = 1000;
    int num_future_periods = 18;   // 2010-2015 ... 2095-2100
    int first_history_year = 1950;
    int jumpoff_year = 2005;       // start of the last observed period
    std::uint64_t seed = 20240801;
};

// Writes mortality.csv, e0_trajectories.csv, tfr_trajectories.csv,
// pasfr_history.csv and a ready-to-run config.txt into dir.
void write_synthetic_dataset(const std::string& dir, const SyntheticSpec& spec);

}  // namespace rateproj

#endif  // RATEPROJ_SYNTHETIC_HPP_
