#ifndef RATEPROJ_PIPELINE_HPP_
#define RATEPROJ_PIPELINE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rateproj/fertility.hpp"
#include "rateproj/mortality_projector.hpp"

namespace rateproj {

// Per-country option overrides; unset fields fall back to defaults.
struct CountryOverride {
    std::optional<AxMethod> ax_method;
    std::optional<BxSource> bx_source;
    std::optional<bool> hiv_mode;
};

// Full batch-run configuration. The pipeline is deterministic; no seed
// exists anywhere.
struct RunConfig {
    std::string mortality_file;
    std::string e0_file;
    std::string tfr_file;
    std::string pasfr_file;
    std::string model_bx_file;  // optional

    std::vector<std::string> countries;                 // empty = all
    std::vector<std::string> global_pattern_countries;  // empty = all loaded
    std::vector<double> quantiles = {0.025, 0.1, 0.5, 0.9, 0.975};
    int workers = 1;
    std::string out_dir = "out";
    bool emit_trajectories = false;
    bool fhat_u_phase3_only = false;
    std::map<std::string, CountryOverride> overrides;

    MortalityProjectionConfig mortality_defaults;
    FertilityProjectionConfig fertility;
};

// Parses a flat key=value config file ('#' starts a comment). Per-
// country overrides use keys of the form country.<id>.<option>.
RunConfig load_run_config(const std::string& path);

// Validates cfg (quantiles in (0,1) and sorted, files readable) and
// throws ValidationError otherwise.
void validate_run_config(const RunConfig& cfg);

struct RunReport {
    std::vector<std::string> succeeded;
    std::vector<std::pair<std::string, std::string>> failed;  // (country, reason)

    bool ok() const { return failed.empty(); }
};

// Runs the full batch: loads inputs, projects every (country,
// trajectory) pair with a deterministic parallel map, and writes
// quantile summaries, plot data, the optional per-trajectory rates and
// a run manifest into cfg.out_dir. Per-country failures are isolated
// and reported.
RunReport run_pipeline(const RunConfig& cfg);

// 64-bit FNV-1a over a file's bytes, as a hex string; used in the run
// manifest.
std::string file_checksum(const std::string& path);

}  // namespace rateproj

#endif  // RATEPROJ_PIPELINE_HPP_
