#include "rateproj/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "rateproj/csv.hpp"
#include "rateproj/error.hpp"

namespace rateproj {

namespace {

struct RawScheduleRow {
    double age_start;
    double age_width;  // AgeGroup::kOpenWidth for the open tail
    double mx;
    std::size_t line;
};

using SurfaceKey = std::pair<std::string, Sex>;  // (country, sex)

struct RawSurface {
    // period start year -> (label, rows)
    std::map<int, std::pair<std::string, std::vector<RawScheduleRow>>> periods;
};

MortalitySurface build_surface(const std::string& path, const std::string& country, Sex sex,
                               const RawSurface& raw) {
    if (raw.periods.size() < 2) {
        throw ValidationError(path + ": country " + country + " sex " + to_string(sex) +
                              " needs at least two historical periods");
    }
    std::vector<Period> periods;
    std::vector<MortalitySchedule> schedules;
    for (const auto& [start_year, entry] : raw.periods) {
        periods.push_back(Period{entry.first, start_year});
        auto rows = entry.second;
        std::sort(rows.begin(), rows.end(),
                  [](const RawScheduleRow& a, const RawScheduleRow& b) {
                      return a.age_start < b.age_start;
                  });
        std::vector<AgeGroup> groups;
        std::vector<double> rates;
        for (const auto& r : rows) {
            groups.push_back({r.age_start, r.age_width});
            rates.push_back(r.mx);
        }
        try {
            schedules.emplace_back(AgeGrid(std::move(groups)), std::move(rates));
        } catch (const Error& e) {
            throw ValidationError(path + ": country " + country + ", period " + entry.first +
                                  ": " + e.what());
        }
    }
    try {
        return MortalitySurface(sex, PeriodAxis(std::move(periods)), std::move(schedules));
    } catch (const Error& e) {
        throw ValidationError(path + ": country " + country + ": " + e.what());
    }
}

std::map<SurfaceKey, RawSurface> load_mortality(const std::string& path) {
    const CsvTable t =
        read_csv(path, {"country", "sex", "period", "age_start", "age_width", "mx"});
    const std::size_t c_country = t.column("country");
    const std::size_t c_sex = t.column("sex");
    const std::size_t c_period = t.column("period");
    const std::size_t c_start = t.column("age_start");
    const std::size_t c_width = t.column("age_width");
    const std::size_t c_mx = t.column("mx");

    std::map<SurfaceKey, RawSurface> out;
    std::set<std::tuple<std::string, std::string, std::string, double>> seen;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string& country = t.cell(r, c_country);
        const Sex sex = [&] {
            try {
                return sex_from_string(t.cell(r, c_sex));
            } catch (const Error& e) {
                throw ValidationError(t.where(r, c_sex) + ": " + e.what());
            }
        }();
        const Period period = [&] {
            try {
                return parse_period(t.cell(r, c_period));
            } catch (const Error& e) {
                throw ValidationError(t.where(r, c_period) + ": " + e.what());
            }
        }();
        const double age_start = t.number(r, c_start);
        const std::string& width_cell = t.cell(r, c_width);
        const double width =
            width_cell == "open" ? AgeGroup::kOpenWidth : t.number(r, c_width);
        const double mx = t.number(r, c_mx);
        if (mx <= 0.0) {
            throw ValidationError(t.where(r, c_mx) + ": nonpositive mortality rate");
        }
        if (!seen.insert({country, t.cell(r, c_sex), period.label, age_start}).second) {
            throw ValidationError(t.where(r, c_start) + ": duplicate (country, sex, period, age)");
        }
        auto& entry = out[{country, sex}].periods[period.start_year];
        entry.first = period.label;
        entry.second.push_back({age_start, width, mx, t.line_numbers[r]});
    }
    return out;
}

struct RawTrajectories {
    // trajectory id -> period start year -> values
    std::map<int, std::map<int, std::pair<std::string, std::vector<double>>>> e0;
    std::map<int, std::map<int, std::pair<std::string, double>>> tfr;
    std::map<int, std::optional<int>> phase3;
};

PeriodAxis common_axis(const std::string& path, const std::string& country,
                       const std::map<int, std::string>& starts) {
    std::vector<Period> periods;
    for (const auto& [start, label] : starts) periods.push_back(Period{label, start});
    try {
        return PeriodAxis(std::move(periods));
    } catch (const Error& e) {
        throw ValidationError(path + ": country " + country + ": " + e.what());
    }
}

}  // namespace

std::vector<CountryData> load_inputs(const std::string& mortality_csv,
                                     const std::string& e0_csv, const std::string& tfr_csv,
                                     const std::string& pasfr_csv,
                                     const std::string& model_bx_csv) {
    auto mort = load_mortality(mortality_csv);

    // e0 trajectories.
    const CsvTable te0 = read_csv(e0_csv, {"country", "trajectory", "period", "e0_f", "e0_m"});
    std::map<std::string, RawTrajectories> raw_traj;
    {
        const std::size_t c_country = te0.column("country");
        const std::size_t c_traj = te0.column("trajectory");
        const std::size_t c_period = te0.column("period");
        const std::size_t c_f = te0.column("e0_f");
        const std::size_t c_m = te0.column("e0_m");
        for (std::size_t r = 0; r < te0.rows.size(); ++r) {
            const Period p = [&] {
                try {
                    return parse_period(te0.cell(r, c_period));
                } catch (const Error& e) {
                    throw ValidationError(te0.where(r, c_period) + ": " + e.what());
                }
            }();
            auto& per = raw_traj[te0.cell(r, c_country)].e0[te0.integer(r, c_traj)];
            if (!per.emplace(p.start_year,
                             std::pair{p.label, std::vector<double>{te0.number(r, c_f),
                                                                    te0.number(r, c_m)}})
                     .second) {
                throw ValidationError(te0.where(r, c_period) +
                                      ": duplicate (country, trajectory, period)");
            }
        }
    }

    // TFR trajectories; phase3_start column is optional.
    const CsvTable ttfr = read_csv(tfr_csv, {"country", "trajectory", "period", "tfr"});
    {
        const std::size_t c_country = ttfr.column("country");
        const std::size_t c_traj = ttfr.column("trajectory");
        const std::size_t c_period = ttfr.column("period");
        const std::size_t c_tfr = ttfr.column("tfr");
        bool has_p3 = false;
        std::size_t c_p3 = 0;
        for (std::size_t i = 0; i < ttfr.header.size(); ++i) {
            if (ttfr.header[i] == "phase3_start") {
                has_p3 = true;
                c_p3 = i;
            }
        }
        for (std::size_t r = 0; r < ttfr.rows.size(); ++r) {
            const Period p = [&] {
                try {
                    return parse_period(ttfr.cell(r, c_period));
                } catch (const Error& e) {
                    throw ValidationError(ttfr.where(r, c_period) + ": " + e.what());
                }
            }();
            auto& country_traj = raw_traj[ttfr.cell(r, c_country)];
            const int id = ttfr.integer(r, c_traj);
            if (!country_traj.tfr[id]
                     .emplace(p.start_year, std::pair{p.label, ttfr.number(r, c_tfr)})
                     .second) {
                throw ValidationError(ttfr.where(r, c_period) +
                                      ": duplicate (country, trajectory, period)");
            }
            if (has_p3 && !ttfr.cell(r, c_p3).empty()) {
                const Period p3 = [&] {
                    try {
                        return parse_period(ttfr.cell(r, c_p3));
                    } catch (const Error& e) {
                        throw ValidationError(ttfr.where(r, c_p3) + ": " + e.what());
                    }
                }();
                auto& slot = country_traj.phase3[id];
                if (slot.has_value() && *slot != p3.start_year) {
                    throw ValidationError(ttfr.where(r, c_p3) +
                                          ": conflicting phase3_start for one trajectory");
                }
                slot = p3.start_year;
            }
        }
    }

    // PASFR history.
    const CsvTable tp = read_csv(pasfr_csv, {"country", "period", "age_start", "pasfr"});
    std::map<std::string, std::map<int, std::pair<std::string, std::map<int, double>>>> raw_pasfr;
    {
        const std::size_t c_country = tp.column("country");
        const std::size_t c_period = tp.column("period");
        const std::size_t c_age = tp.column("age_start");
        const std::size_t c_val = tp.column("pasfr");
        for (std::size_t r = 0; r < tp.rows.size(); ++r) {
            const Period p = [&] {
                try {
                    return parse_period(tp.cell(r, c_period));
                } catch (const Error& e) {
                    throw ValidationError(tp.where(r, c_period) + ": " + e.what());
                }
            }();
            const int age = tp.integer(r, c_age);
            const double v = tp.number(r, c_val);
            if (v < 0.0 || v > 1.0) {
                throw ValidationError(tp.where(r, c_val) + ": PASFR outside [0,1]");
            }
            auto& entry = raw_pasfr[tp.cell(r, c_country)][p.start_year];
            entry.first = p.label;
            if (!entry.second.emplace(age, v).second) {
                throw ValidationError(tp.where(r, c_age) + ": duplicate (country, period, age)");
            }
        }
    }

    // Optional model b_x.
    std::map<std::string, std::map<int, double>> raw_bx;
    if (!model_bx_csv.empty()) {
        const CsvTable tb = read_csv(model_bx_csv, {"country", "age_start", "bx"});
        const std::size_t c_country = tb.column("country");
        const std::size_t c_age = tb.column("age_start");
        const std::size_t c_bx = tb.column("bx");
        for (std::size_t r = 0; r < tb.rows.size(); ++r) {
            if (!raw_bx[tb.cell(r, c_country)]
                     .emplace(tb.integer(r, c_age), tb.number(r, c_bx))
                     .second) {
                throw ValidationError(tb.where(r, c_age) + ": duplicate (country, age)");
            }
        }
    }

    // Assemble per country.
    std::vector<CountryData> out;
    for (const auto& [key, raw_f] : mort) {
        const auto& [country, sex] = key;
        if (sex != Sex::Female) continue;
        const auto it_m = mort.find({country, Sex::Male});
        if (it_m == mort.end()) {
            throw ValidationError(mortality_csv + ": country " + country +
                                  " has female but no male mortality data");
        }
        MortalitySurface surf_f = build_surface(mortality_csv, country, Sex::Female, raw_f);
        MortalitySurface surf_m =
            build_surface(mortality_csv, country, Sex::Male, it_m->second);
        if (!(surf_f.grid() == surf_m.grid()) || !(surf_f.periods() == surf_m.periods())) {
            throw ValidationError(mortality_csv + ": country " + country +
                                  ": female and male surfaces must share grid and periods");
        }

        const auto traj_it = raw_traj.find(country);
        if (traj_it == raw_traj.end() || traj_it->second.e0.empty() ||
            traj_it->second.tfr.empty()) {
            throw ValidationError("country " + country + " has mortality data but no "
                                  "trajectories in " + e0_csv + " / " + tfr_csv);
        }
        const RawTrajectories& rt = traj_it->second;

        // All trajectories must share one contiguous future axis.
        std::map<int, std::string> starts;
        for (const auto& [start, entry] : rt.e0.begin()->second) starts[start] = entry.first;
        PeriodAxis future = common_axis(e0_csv, country, starts);
        if (future.front().start_year != surf_f.periods().back().start_year + 5) {
            throw ValidationError(e0_csv + ": country " + country +
                                  ": future periods must start right after the last "
                                  "observed mortality period");
        }

        std::vector<E0Trajectory> e0s;
        for (const auto& [id, per] : rt.e0) {
            E0Trajectory et;
            et.id = id;
            for (const Period& p : future.periods()) {
                const auto f = per.find(p.start_year);
                if (f == per.end()) {
                    throw ValidationError(e0_csv + ": country " + country + ", trajectory " +
                                          std::to_string(id) + ": missing period " + p.label);
                }
                et.e0_f.push_back(f->second.second[0]);
                et.e0_m.push_back(f->second.second[1]);
            }
            if (per.size() != future.size()) {
                throw ValidationError(e0_csv + ": country " + country + ", trajectory " +
                                      std::to_string(id) + ": period set differs across "
                                      "trajectories");
            }
            e0s.push_back(std::move(et));
        }
        std::vector<TfrTrajectory> tfrs;
        for (const auto& [id, per] : rt.tfr) {
            TfrTrajectory tt;
            tt.id = id;
            for (const Period& p : future.periods()) {
                const auto f = per.find(p.start_year);
                if (f == per.end()) {
                    throw ValidationError(tfr_csv + ": country " + country + ", trajectory " +
                                          std::to_string(id) + ": missing period " + p.label);
                }
                tt.tfr.push_back(f->second.second);
            }
            if (per.size() != future.size()) {
                throw ValidationError(tfr_csv + ": country " + country + ", trajectory " +
                                      std::to_string(id) + ": period set differs across "
                                      "trajectories");
            }
            const auto p3 = rt.phase3.find(id);
            if (p3 != rt.phase3.end()) tt.phase3_start_year = p3->second;
            tfrs.push_back(std::move(tt));
        }
        if (e0s.size() != tfrs.size()) {
            throw ValidationError("country " + country + ": e0 and TFR files carry different "
                                  "trajectory counts");
        }
        for (std::size_t i = 0; i < e0s.size(); ++i) {
            if (e0s[i].id != tfrs[i].id) {
                throw ValidationError("country " + country + ": e0 and TFR trajectory ids do "
                                      "not match");
            }
        }

        // PASFR history; the last period must immediately precede the
        // future axis.
        const auto pasfr_it = raw_pasfr.find(country);
        if (pasfr_it == raw_pasfr.end()) {
            throw ValidationError(pasfr_csv + ": no PASFR history for country " + country);
        }
        std::vector<Period> ppers;
        std::vector<PasfrPattern> phist;
        for (const auto& [start, entry] : pasfr_it->second) {
            ppers.push_back(Period{entry.first, start});
            std::array<double, kFertilityAgeGroups> arr{};
            for (std::size_t i = 0; i < kFertilityAgeGroups; ++i) {
                const int age = static_cast<int>(kFertilityAgeStarts[i]);
                const auto f = entry.second.find(age);
                if (f == entry.second.end()) {
                    throw ValidationError(pasfr_csv + ": country " + country + ", period " +
                                          entry.first + ": missing age group " +
                                          std::to_string(age));
                }
                arr[i] = f->second;
            }
            double sum = 0.0;
            for (double v : arr) sum += v;
            if (std::abs(sum - 1.0) > 1e-6) {
                throw ValidationError(pasfr_csv + ": country " + country + ", period " +
                                      entry.first + ": PASFR sums to " + std::to_string(sum));
            }
            phist.push_back(PasfrPattern::normalized(arr));
        }
        PeriodAxis pasfr_axis = [&] {
            try {
                return PeriodAxis(std::move(ppers));
            } catch (const Error& e) {
                throw ValidationError(pasfr_csv + ": country " + country + ": " + e.what());
            }
        }();
        if (pasfr_axis.back().start_year + 5 != future.front().start_year) {
            throw ValidationError(pasfr_csv + ": country " + country +
                                  ": PASFR history must end right before the first future "
                                  "period");
        }

        std::optional<std::vector<double>> model_bx;
        const auto bx_it = raw_bx.find(country);
        if (bx_it != raw_bx.end()) {
            const AgeGrid full = AgeGrid::canonical_full();
            std::vector<double> bx;
            for (const AgeGroup& g : full.groups()) {
                const auto f = bx_it->second.find(static_cast<int>(g.start));
                if (f == bx_it->second.end()) {
                    throw ValidationError(model_bx_csv + ": country " + country +
                                          ": missing b_x for age " +
                                          std::to_string(static_cast<int>(g.start)));
                }
                bx.push_back(f->second);
            }
            model_bx = std::move(bx);
        }

        out.push_back(CountryData{country, std::move(surf_f), std::move(surf_m),
                                  std::move(pasfr_axis), std::move(phist),
                                  TrajectoryBundle(country, future, std::move(e0s),
                                                   std::move(tfrs)),
                                  std::move(model_bx)});
    }
    if (out.empty()) {
        throw ValidationError(mortality_csv + ": no countries found");
    }
    return out;
}

}  // namespace rateproj
