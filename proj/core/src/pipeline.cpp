#include "rateproj/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "rateproj/csv.hpp"
#include "rateproj/error.hpp"
#include "rateproj/io.hpp"
#include "rateproj/kannisto.hpp"
#include "rateproj/life_table.hpp"
#include "rateproj/quantiles.hpp"

namespace rateproj {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::uint64_t fnv1a(const char* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "' for checksumming");
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
    }
    return hex64(h);
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));

        if (key == "mortality_file") cfg.mortality_file = value;
        else if (key == "e0_file") cfg.e0_file = value;
        else if (key == "tfr_file") cfg.tfr_file = value;
        else if (key == "pasfr_file") cfg.pasfr_file = value;
        else if (key == "model_bx_file") cfg.model_bx_file = value;
        else if (key == "countries") cfg.countries = split_list(value);
        else if (key == "global_pattern_countries") cfg.global_pattern_countries = split_list(value);
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "workers") cfg.workers = std::stoi(value);
        else if (key == "emit_trajectories") cfg.emit_trajectories = parse_bool(value, key);
        else if (key == "fhat_u_phase3_only") cfg.fhat_u_phase3_only = parse_bool(value, key);
        else if (key == "quantiles") {
            cfg.quantiles.clear();
            for (const auto& q : split_list(value)) cfg.quantiles.push_back(std::stod(q));
        } else if (key.rfind("country.", 0) == 0) {
            const auto rest = key.substr(8);
            const auto dot = rest.rfind('.');
            if (dot == std::string::npos) {
                throw ValidationError(path + ":" + std::to_string(line_no) +
                                      ": expected country.<id>.<option>");
            }
            const std::string country = rest.substr(0, dot);
            const std::string opt = rest.substr(dot + 1);
            auto& ov = cfg.overrides[country];
            if (opt == "ax_method") ov.ax_method = ax_method_from_string(value);
            else if (opt == "bx_source") {
                if (value == "estimated") ov.bx_source = BxSource::Estimated;
                else if (value == "model") ov.bx_source = BxSource::ModelLifeTable;
                else throw ValidationError(path + ":" + std::to_string(line_no) +
                                           ": bx_source must be 'estimated' or 'model'");
            } else if (opt == "hiv_mode") ov.hiv_mode = parse_bool(value, key);
            else throw ValidationError(path + ":" + std::to_string(line_no) +
                                       ": unknown country option '" + opt + "'");
        } else {
            throw ValidationError(path + ":" + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
        }
    }
    return cfg;
}

void validate_run_config(const RunConfig& cfg) {
    if (cfg.quantiles.empty()) throw ValidationError("quantile set must be nonempty");
    for (std::size_t i = 0; i < cfg.quantiles.size(); ++i) {
        const double q = cfg.quantiles[i];
        if (!(q > 0.0 && q < 1.0)) {
            throw ValidationError("quantile levels must lie in (0,1)");
        }
        if (i > 0 && cfg.quantiles[i - 1] >= q) {
            throw ValidationError("quantile levels must be strictly increasing");
        }
    }
    if (cfg.workers < 1) throw ValidationError("worker count must be at least 1");
    for (const std::string* f :
         {&cfg.mortality_file, &cfg.e0_file, &cfg.tfr_file, &cfg.pasfr_file}) {
        if (f->empty()) throw ValidationError("all four input file paths must be set");
        if (!std::ifstream(*f)) throw ValidationError("input file '" + *f + "' does not exist");
    }
    if (!cfg.model_bx_file.empty() && !std::ifstream(cfg.model_bx_file)) {
        throw ValidationError("model b_x file '" + cfg.model_bx_file + "' does not exist");
    }
}

namespace {

// Everything computed for one trajectory, merged later by index.
struct TrajectoryResult {
    ProjectedMortality mort;
    std::vector<double> e0_f_out;  // recomputed from the emitted schedules
    std::vector<double> e0_m_out;
    PasfrTrajectory pasfr;
    std::vector<std::array<double, kFertilityAgeGroups>> asfr;
    std::vector<double> mac;
};

struct CountryResults {
    const CountryData* data = nullptr;
    std::vector<TrajectoryResult> trajectories;
    PasfrPattern global_pattern{std::array<double, kFertilityAgeGroups>{
        1.0 / 7, 1.0 / 7, 1.0 / 7, 1.0 / 7, 1.0 / 7, 1.0 / 7,
        1.0 - 6.0 / 7}};
    double ultimate_tfr = 0.0;
};

MortalityProjectionConfig country_mortality_config(const RunConfig& cfg,
                                                   const CountryData& data) {
    MortalityProjectionConfig mc = cfg.mortality_defaults;
    const auto it = cfg.overrides.find(data.country);
    if (it != cfg.overrides.end()) {
        if (it->second.ax_method) mc.ax_method = *it->second.ax_method;
        if (it->second.bx_source) mc.bx_source = *it->second.bx_source;
        if (it->second.hiv_mode) mc.hiv_mode = *it->second.hiv_mode;
    }
    if (mc.hiv_mode) mc.bx_source = BxSource::ModelLifeTable;
    if (mc.bx_source == BxSource::ModelLifeTable) {
        if (!data.model_bx) {
            throw ValidationError("country " + data.country +
                                  ": model b_x requested but not supplied");
        }
        mc.model_bx = *data.model_bx;
    }
    return mc;
}

CountryResults project_country(const RunConfig& cfg, const CountryData& data,
                               const PasfrPattern& global_pattern) {
    CountryResults res;
    res.data = &data;
    res.global_pattern = global_pattern;

    const MortalityProjectionConfig mc = country_mortality_config(cfg, data);
    const PeriodAxis& future = data.trajectories.future_periods();

    const auto [ext_f, ext_m] =
        extend_to_130(data.mort_f, data.mort_m, KannistoMode::Coherent);
    const MortalityFitProducts fit = fit_mortality_model(ext_f, ext_m, future, mc);

    FertilityProjectionConfig fc = cfg.fertility;
    fc.fhat_u_phase3_only = cfg.fhat_u_phase3_only;
    res.ultimate_tfr = estimate_ultimate_tfr(data.trajectories.tfr_trajectories(),
                                             future.size(), fc);

    // Fertility history window; shortened with a warning when the
    // history is too short for the configured trend window.
    const std::size_t hist = data.pasfr_history.size();
    int window = fc.trend_window;
    if (hist < static_cast<std::size_t>(window) + 1) {
        window = static_cast<int>(hist) - 1;
        std::cerr << "warning: country " << data.country << ": PASFR history has " << hist
                  << " periods; national-trend window shortened to " << window << "\n";
        if (window < 1) {
            throw InsufficientDataError("country " + data.country +
                                        ": PASFR history needs at least two periods");
        }
    }
    const PasfrPattern& p_r = data.pasfr_history.back();
    const PasfrPattern& p_r_minus = data.pasfr_history[hist - 1 - window];

    const int base_year = data.mort_f.periods().back().start_year;
    const auto& e0s = data.trajectories.e0_trajectories();
    const auto& tfrs = data.trajectories.tfr_trajectories();
    const std::size_t n_traj = e0s.size();
    res.trajectories.resize(n_traj);

    std::mutex err_mutex;
    std::exception_ptr first_error;

    const auto work = [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t i = begin; i < end; ++i) {
                TrajectoryResult tr;
                tr.mort = project_trajectory(fit, e0s[i].e0_f, e0s[i].e0_m, mc);
                const AgeGrid full = AgeGrid::canonical_full();
                for (std::size_t j = 0; j < future.size(); ++j) {
                    tr.e0_f_out.push_back(
                        e0_from_mx(MortalitySchedule(full, tr.mort.m_f[j]), Sex::Female));
                    tr.e0_m_out.push_back(
                        e0_from_mx(MortalitySchedule(full, tr.mort.m_m[j]), Sex::Male));
                }

                std::optional<int> p3_rel;
                if (tfrs[i].phase3_start_year) {
                    p3_rel = (*tfrs[i].phase3_start_year - base_year) / 5;
                }
                const TgEstimate tg =
                    estimate_tg(tfrs[i].tfr, p3_rel, res.ultimate_tfr, fc);
                tr.pasfr = project_pasfr_trajectory(p_r, p_r_minus, window, global_pattern,
                                                    tg, future.size());
                for (std::size_t j = 0; j < future.size(); ++j) {
                    tr.asfr.push_back(asfr_from_pasfr(tr.pasfr.patterns[j], tfrs[i].tfr[j]));
                    tr.mac.push_back(mean_age_childbearing(tr.pasfr.patterns[j]));
                }
                res.trajectories[i] = std::move(tr);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(n_traj)));
    if (workers == 1) {
        work(0, n_traj);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n_traj + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t b = static_cast<std::size_t>(w) * chunk;
            const std::size_t e = std::min(n_traj, b + chunk);
            if (b >= e) break;
            pool.emplace_back(work, b, e);
        }
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return res;
}

using Rows = std::vector<std::vector<std::string>>;

void append_quantile_rows(const RunConfig& cfg, const CountryResults& res, Rows& mx_rows,
                          Rows& e0_rows, Rows& pasfr_rows, Rows& asfr_rows, Rows& mac_rows) {
    const CountryData& data = *res.data;
    const PeriodAxis& future = data.trajectories.future_periods();
    const AgeGrid full = AgeGrid::canonical_full();
    const std::size_t n_traj = res.trajectories.size();

    std::vector<double> sample(n_traj);
    for (Sex sex : {Sex::Female, Sex::Male}) {
        for (std::size_t j = 0; j < future.size(); ++j) {
            for (std::size_t x = 0; x < full.size(); ++x) {
                for (std::size_t i = 0; i < n_traj; ++i) {
                    const auto& m = sex == Sex::Female ? res.trajectories[i].mort.m_f
                                                      : res.trajectories[i].mort.m_m;
                    sample[i] = m[j][x];
                }
                const auto qs = empirical_quantiles(sample, cfg.quantiles);
                for (std::size_t q = 0; q < qs.size(); ++q) {
                    mx_rows.push_back({data.country, to_string(sex), future.at(j).label,
                                       format_number(full.group(x).start),
                                       format_number(cfg.quantiles[q]),
                                       format_number(qs[q])});
                }
            }
            for (std::size_t i = 0; i < n_traj; ++i) {
                sample[i] = sex == Sex::Female ? res.trajectories[i].e0_f_out[j]
                                               : res.trajectories[i].e0_m_out[j];
            }
            const auto qs = empirical_quantiles(sample, cfg.quantiles);
            for (std::size_t q = 0; q < qs.size(); ++q) {
                e0_rows.push_back({data.country, to_string(sex), future.at(j).label,
                                   format_number(cfg.quantiles[q]), format_number(qs[q])});
            }
        }
    }

    for (std::size_t j = 0; j < future.size(); ++j) {
        for (std::size_t a = 0; a < kFertilityAgeGroups; ++a) {
            for (std::size_t i = 0; i < n_traj; ++i) {
                sample[i] = res.trajectories[i].pasfr.patterns[j].at(a);
            }
            auto qs = empirical_quantiles(sample, cfg.quantiles);
            for (std::size_t q = 0; q < qs.size(); ++q) {
                pasfr_rows.push_back({data.country, future.at(j).label,
                                      format_number(kFertilityAgeStarts[a]),
                                      format_number(cfg.quantiles[q]), format_number(qs[q])});
            }
            for (std::size_t i = 0; i < n_traj; ++i) {
                sample[i] = res.trajectories[i].asfr[j][a];
            }
            qs = empirical_quantiles(sample, cfg.quantiles);
            for (std::size_t q = 0; q < qs.size(); ++q) {
                asfr_rows.push_back({data.country, future.at(j).label,
                                     format_number(kFertilityAgeStarts[a]),
                                     format_number(cfg.quantiles[q]), format_number(qs[q])});
            }
        }
        for (std::size_t i = 0; i < n_traj; ++i) sample[i] = res.trajectories[i].mac[j];
        const auto qs = empirical_quantiles(sample, cfg.quantiles);
        for (std::size_t q = 0; q < qs.size(); ++q) {
            mac_rows.push_back({data.country, future.at(j).label,
                                format_number(cfg.quantiles[q]), format_number(qs[q])});
        }
    }
}

void append_plot_rows(const RunConfig& cfg, const CountryResults& res, Rows& mx_age_rows,
                      Rows& joint_rows, Rows& mac_time_rows) {
    const CountryData& data = *res.data;
    const PeriodAxis& future = data.trajectories.future_periods();
    const AgeGrid full = AgeGrid::canonical_full();
    const std::size_t n_traj = res.trajectories.size();
    const std::size_t last = future.size() - 1;

    // Rates vs age in the final period (log scale applied downstream).
    std::vector<double> sample(n_traj);
    for (Sex sex : {Sex::Female, Sex::Male}) {
        for (std::size_t x = 0; x < full.size(); ++x) {
            for (std::size_t i = 0; i < n_traj; ++i) {
                const auto& m = sex == Sex::Female ? res.trajectories[i].mort.m_f
                                                  : res.trajectories[i].mort.m_m;
                sample[i] = m[last][x];
            }
            const auto qs = empirical_quantiles(sample, cfg.quantiles);
            for (std::size_t q = 0; q < qs.size(); ++q) {
                mx_age_rows.push_back({data.country, to_string(sex), future.at(last).label,
                                       format_number(full.group(x).start),
                                       format_number(full.group(x).midpoint()),
                                       format_number(cfg.quantiles[q]),
                                       format_number(qs[q])});
            }
        }
    }

    // Female-vs-male joint scatter for the final period.
    const auto& e0_ids = data.trajectories.e0_trajectories();
    for (std::size_t i = 0; i < n_traj; ++i) {
        for (std::size_t x = 0; x < full.size(); ++x) {
            joint_rows.push_back({data.country, std::to_string(e0_ids[i].id),
                                  future.at(last).label,
                                  format_number(full.group(x).start),
                                  format_number(res.trajectories[i].mort.m_f[last][x]),
                                  format_number(res.trajectories[i].mort.m_m[last][x])});
        }
    }

    // Per-trajectory MAC time series.
    for (std::size_t i = 0; i < n_traj; ++i) {
        for (std::size_t j = 0; j < future.size(); ++j) {
            mac_time_rows.push_back({data.country, std::to_string(e0_ids[i].id),
                                     future.at(j).label,
                                     format_number(res.trajectories[i].mac[j])});
        }
    }
}

void append_trajectory_rows(const CountryResults& res, Rows& mx_rows, Rows& asfr_rows) {
    const CountryData& data = *res.data;
    const PeriodAxis& future = data.trajectories.future_periods();
    const AgeGrid full = AgeGrid::canonical_full();
    const auto& ids = data.trajectories.e0_trajectories();
    for (std::size_t i = 0; i < res.trajectories.size(); ++i) {
        const std::string id = std::to_string(ids[i].id);
        for (std::size_t j = 0; j < future.size(); ++j) {
            for (std::size_t x = 0; x < full.size(); ++x) {
                mx_rows.push_back({data.country, id, "F", future.at(j).label,
                                   format_number(full.group(x).start),
                                   format_number(res.trajectories[i].mort.m_f[j][x])});
                mx_rows.push_back({data.country, id, "M", future.at(j).label,
                                   format_number(full.group(x).start),
                                   format_number(res.trajectories[i].mort.m_m[j][x])});
            }
            for (std::size_t a = 0; a < kFertilityAgeGroups; ++a) {
                asfr_rows.push_back({data.country, id, future.at(j).label,
                                     format_number(kFertilityAgeStarts[a]),
                                     format_number(res.trajectories[i].asfr[j][a])});
            }
        }
    }
}

std::string config_hash(const RunConfig& cfg) {
    std::ostringstream os;
    os << cfg.mortality_file << '|' << cfg.e0_file << '|' << cfg.tfr_file << '|'
       << cfg.pasfr_file << '|' << cfg.model_bx_file << '|' << cfg.out_dir << '|'
       << cfg.emit_trajectories << '|' << cfg.fhat_u_phase3_only;
    for (const auto& c : cfg.countries) os << '|' << c;
    for (const auto& c : cfg.global_pattern_countries) os << '|' << c;
    for (double q : cfg.quantiles) os << '|' << format_number(q);
    for (const auto& [country, ov] : cfg.overrides) {
        os << '|' << country;
        if (ov.ax_method) os << ":ax=" << to_string(*ov.ax_method);
        if (ov.bx_source)
            os << ":bx=" << (*ov.bx_source == BxSource::Estimated ? "estimated" : "model");
        if (ov.hiv_mode) os << ":hiv=" << *ov.hiv_mode;
    }
    const std::string s = os.str();
    return hex64(fnv1a(s.data(), s.size()));
}

}  // namespace

RunReport run_pipeline(const RunConfig& cfg) {
    validate_run_config(cfg);
    std::filesystem::create_directories(cfg.out_dir);

    auto countries = load_inputs(cfg.mortality_file, cfg.e0_file, cfg.tfr_file,
                                 cfg.pasfr_file, cfg.model_bx_file);
    std::sort(countries.begin(), countries.end(),
              [](const CountryData& a, const CountryData& b) { return a.country < b.country; });

    // Global model pattern: mean of the latest observed PASFR of the
    // configured country set.
    std::vector<PasfrPattern> latest;
    for (const auto& c : countries) {
        const bool in_set = cfg.global_pattern_countries.empty() ||
                            std::find(cfg.global_pattern_countries.begin(),
                                      cfg.global_pattern_countries.end(),
                                      c.country) != cfg.global_pattern_countries.end();
        if (in_set) latest.push_back(c.pasfr_history.back());
    }
    if (latest.empty()) {
        throw ValidationError("global_pattern_countries selects no loaded country");
    }
    const PasfrPattern global_pattern = global_model_pattern(latest);

    Rows mx_rows, e0_rows, pasfr_rows, asfr_rows, mac_rows;
    Rows plot_mx_rows, plot_joint_rows, plot_mac_rows;
    Rows traj_mx_rows, traj_asfr_rows;

    RunReport report;
    for (const CountryData& data : countries) {
        const bool selected =
            cfg.countries.empty() || std::find(cfg.countries.begin(), cfg.countries.end(),
                                               data.country) != cfg.countries.end();
        if (!selected) continue;
        try {
            const CountryResults res = project_country(cfg, data, global_pattern);
            append_quantile_rows(cfg, res, mx_rows, e0_rows, pasfr_rows, asfr_rows, mac_rows);
            append_plot_rows(cfg, res, plot_mx_rows, plot_joint_rows, plot_mac_rows);
            if (cfg.emit_trajectories) {
                append_trajectory_rows(res, traj_mx_rows, traj_asfr_rows);
            }
            report.succeeded.push_back(data.country);
        } catch (const std::exception& e) {
            report.failed.emplace_back(data.country, e.what());
            std::cerr << "error: country " << data.country << " failed: " << e.what() << "\n";
        }
    }
    if (report.succeeded.empty() && !report.failed.empty()) {
        return report;  // nothing to write
    }

    const std::string& out = cfg.out_dir;
    write_csv(out + "/mx_quantiles.csv",
              {"country", "sex", "period", "age_start", "quantile", "mx"}, mx_rows);
    write_csv(out + "/e0_quantiles.csv", {"country", "sex", "period", "quantile", "e0"},
              e0_rows);
    write_csv(out + "/pasfr_quantiles.csv",
              {"country", "period", "age_start", "quantile", "pasfr"}, pasfr_rows);
    write_csv(out + "/asfr_quantiles.csv",
              {"country", "period", "age_start", "quantile", "asfr"}, asfr_rows);
    write_csv(out + "/mac_quantiles.csv", {"country", "period", "quantile", "mac"}, mac_rows);
    write_csv(out + "/plot_mx_age.csv",
              {"country", "sex", "period", "age_start", "age_mid", "quantile", "mx"},
              plot_mx_rows);
    write_csv(out + "/plot_joint_mf.csv",
              {"country", "trajectory", "period", "age_start", "mx_f", "mx_m"},
              plot_joint_rows);
    write_csv(out + "/plot_mac_time.csv", {"country", "trajectory", "period", "mac"},
              plot_mac_rows);
    if (cfg.emit_trajectories) {
        write_csv(out + "/trajectories_mx.csv",
                  {"country", "trajectory", "sex", "period", "age_start", "mx"}, traj_mx_rows);
        write_csv(out + "/trajectories_asfr.csv",
                  {"country", "trajectory", "period", "age_start", "asfr"}, traj_asfr_rows);
    }

    // Reproducibility manifest.
    {
        std::ofstream m(out + "/run_manifest.txt");
        m << "config_hash = " << config_hash(cfg) << "\n"
          << "checksum_mortality = " << file_checksum(cfg.mortality_file) << "\n"
          << "checksum_e0 = " << file_checksum(cfg.e0_file) << "\n"
          << "checksum_tfr = " << file_checksum(cfg.tfr_file) << "\n"
          << "checksum_pasfr = " << file_checksum(cfg.pasfr_file) << "\n";
        if (!cfg.model_bx_file.empty()) {
            m << "checksum_model_bx = " << file_checksum(cfg.model_bx_file) << "\n";
        }
        m << "countries_succeeded =";
        for (const auto& c : report.succeeded) m << ' ' << c;
        m << "\ncountries_failed =";
        for (const auto& [c, _] : report.failed) m << ' ' << c;
        m << "\n";
    }
    return report;
}

}  // namespace rateproj
