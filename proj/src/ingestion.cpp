#include "hazardrate/ingestion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hazardrate/csv.hpp"
#include "hazardrate/errors.hpp"

namespace hazardrate::ingest {

namespace {

std::string where(const std::string& path, std::size_t line) {
    return path + ": line " + std::to_string(line);
}

std::string normalize_country(const CountryRegistry& registry, const std::string& code,
                              const std::string& path, std::size_t line) {
    auto iso3 = registry.normalize(code);
    if (!iso3) {
        throw Error(Errc::unknown_country, where(path, line) + ": '" + code + "'");
    }
    return *iso3;
}

int parse_year(const std::string& field, const std::string& path, std::size_t line) {
    int year = csv::parse_int(field, line, path + ": year");
    if (year < 1900 || year > 2100) {
        throw Error(Errc::malformed_row, where(path, line) + ": implausible year " + field);
    }
    return year;
}

double parse_rate(const std::string& field, const std::string& path, std::size_t line) {
    double rate = csv::parse_double(field, line, path + ": rate");
    if (rate < 0.0 || rate > 1.0) {
        throw Error(Errc::malformed_row, where(path, line) + ": rate " + field +
                                             " outside [0, 1]");
    }
    return rate;
}

}  // namespace

const char* to_string(EconSource s) {
    switch (s) {
        case EconSource::damodaran: return "DAMODARAN";
        case EconSource::wikirating: return "WIKIRATING";
        case EconSource::credendo: return "CREDENDO";
        case EconSource::override_entry: return "OVERRIDE";
    }
    return "UNKNOWN";
}

const char* to_string(HazardSource s) {
    return s == HazardSource::wri ? "WRI" : "NEIGHBOR_OVERRIDE";
}

GradeTable GradeTable::load(const std::string& path) {
    csv::Table t = csv::read_file(path);
    const std::size_t cg = t.require_column("grade");
    const std::size_t cr = t.require_column("rate");
    GradeTable g;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string& label = t.rows[r].at(cg);
        double rate = parse_rate(t.rows[r].at(cr), path, t.lines[r]);
        if (!g.by_label_.emplace(label, rate).second) {
            throw Error(Errc::bad_config, path + ": duplicate grade '" + label + "'");
        }
        if (!g.entries_.empty() && rate <= g.entries_.back().second) {
            throw Error(Errc::bad_config,
                        path + ": rates must increase strictly toward worse grades ('" +
                            label + "')");
        }
        g.entries_.emplace_back(label, rate);
    }
    if (g.entries_.size() != 21) {
        throw Error(Errc::bad_config, path + ": expected 21 grades, found " +
                                          std::to_string(g.entries_.size()));
    }
    return g;
}

double GradeTable::rate_for(const std::string& grade) const {
    auto it = by_label_.find(grade);
    if (it == by_label_.end()) {
        throw Error(Errc::unknown_grade, "'" + grade + "'");
    }
    return it->second;
}

double GradeTable::rate_at(std::size_t index) const {
    if (index >= entries_.size()) {
        throw Error(Errc::out_of_range, "grade index " + std::to_string(index));
    }
    return entries_[index].second;
}

double credendo_to_rate(int score, const GradeTable& table) {
    if (score < 1 || score > 7) {
        throw Error(Errc::out_of_range, "score " + std::to_string(score) + " not in 1..7");
    }
    const std::size_t index =
        static_cast<std::size_t>(std::floor((score - 1) * 20.0 / 6.0 + 0.5));
    return table.rate_at(index);
}

std::vector<RatingObservation> parse_economic_source(const std::string& path, EconSource kind,
                                                     const CountryRegistry& registry,
                                                     const GradeTable* grades) {
    if (kind == EconSource::override_entry) {
        throw Error(Errc::bad_config, "override entries have a dedicated parser");
    }
    if (kind != EconSource::damodaran && grades == nullptr) {
        throw Error(Errc::bad_config, std::string(to_string(kind)) +
                                          " requires a grade table");
    }
    csv::Table t = csv::read_file(path);
    const std::size_t ci = t.require_column("iso3");

    std::vector<RatingObservation> out;
    out.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::size_t line = t.lines[r];
        RatingObservation obs;
        obs.iso3 = normalize_country(registry, row.at(ci), path, line);
        obs.source = kind;
        switch (kind) {
            case EconSource::damodaran: {
                obs.year = parse_year(row.at(t.require_column("year")), path, line);
                obs.raw = row.at(t.require_column("rate"));
                obs.rate = parse_rate(obs.raw, path, line);
                break;
            }
            case EconSource::wikirating: {
                obs.raw = row.at(t.require_column("grade"));
                try {
                    obs.rate = grades->rate_for(obs.raw);
                } catch (const Error& e) {
                    throw Error(e.code(), where(path, line) + ": " + e.what());
                }
                break;
            }
            default: {  // credendo
                obs.raw = row.at(t.require_column("score"));
                int score = csv::parse_int(obs.raw, line, path + ": score");
                if (score < 1 || score > 7) {
                    throw Error(Errc::malformed_row,
                                where(path, line) + ": score " + obs.raw + " not in 1..7");
                }
                obs.rate = credendo_to_rate(score, *grades);
                break;
            }
        }
        out.push_back(std::move(obs));
    }
    return out;
}

std::vector<HazardScore> parse_wri(const std::string& path, const CountryRegistry& registry) {
    csv::Table t = csv::read_file(path);
    const std::size_t ci = t.require_column("iso3");
    const std::size_t cy = t.require_column("year");
    const std::size_t cs = t.require_column("score");

    std::vector<HazardScore> out;
    out.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::size_t line = t.lines[r];
        HazardScore h;
        h.iso3 = normalize_country(registry, row.at(ci), path, line);
        h.year = parse_year(row.at(cy), path, line);
        h.wri = csv::parse_double(row.at(cs), line, path + ": score");
        if (h.wri < 0.0 || h.wri > 100.0) {
            throw Error(Errc::malformed_row, where(path, line) + ": score " + row.at(cs) +
                                                 " outside [0, 100]");
        }
        out.push_back(std::move(h));
    }
    return out;
}

std::map<std::string, Override> parse_overrides(const std::string& path,
                                                const CountryRegistry& registry) {
    csv::Table t = csv::read_file(path);
    const std::size_t ci = t.require_column("iso3");
    const std::size_t cv = t.require_column("donor_iso3_or_rate");

    std::map<std::string, Override> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::size_t line = t.lines[r];
        Override o;
        o.iso3 = normalize_country(registry, row.at(ci), path, line);
        const std::string& value = row.at(cv);
        if (auto donor = registry.normalize(value)) {
            o.is_donor = true;
            o.donor = *donor;
            if (o.donor == o.iso3) {
                throw Error(Errc::malformed_row,
                            where(path, line) + ": " + o.iso3 + " cannot donate to itself");
            }
        } else {
            o.rate = parse_rate(value, path, line);
        }
        if (!out.emplace(o.iso3, o).second) {
            throw Error(Errc::malformed_row,
                        where(path, line) + ": duplicate override for " + o.iso3);
        }
    }
    return out;
}

ResolvedRates resolve_rates(const CountryRegistry& registry,
                            const std::vector<RatingObservation>& damodaran,
                            const std::vector<RatingObservation>& wikirating,
                            const std::vector<RatingObservation>& credendo,
                            const std::vector<HazardScore>& wri,
                            const std::map<std::string, Override>& overrides) {
    ResolvedRates res;

    // Pass 1: direct sources, in cascade order.
    for (const auto* obs_list : {&damodaran, &wikirating, &credendo}) {
        for (const auto& obs : *obs_list) {
            auto it = res.econ.find(obs.iso3);
            if (it == res.econ.end()) {
                EconomicRateSeries s;
                s.iso3 = obs.iso3;
                s.source = obs.source;
                s.samples[obs.year] = obs.rate;
                res.econ.emplace(obs.iso3, std::move(s));
            } else if (it->second.source == obs.source) {
                it->second.samples[obs.year] = obs.rate;  // more years, same source
            }
            // a lower-ranked source never displaces a higher-ranked one
        }
    }
    for (const auto& h : wri) {
        auto it = res.hazard.find(h.iso3);
        if (it == res.hazard.end() || it->second.year < h.year) {
            res.hazard[h.iso3] = h;  // keep the latest report
        }
    }

    // Pass 2: overrides fill what the sources left open, copying from
    // directly-resolved donors only (no donor chains).
    std::vector<std::string> unresolved;
    for (const auto& cc : registry.all()) {
        const auto ov = overrides.find(cc.iso3);
        bool econ_ok = res.econ.count(cc.iso3) != 0;
        bool hazard_ok = res.hazard.count(cc.iso3) != 0;
        if (!econ_ok && ov != overrides.end()) {
            const Override& o = ov->second;
            if (o.is_donor) {
                auto donor = res.econ.find(o.donor);
                if (donor != res.econ.end() &&
                    donor->second.source != EconSource::override_entry) {
                    EconomicRateSeries s = donor->second;
                    s.iso3 = cc.iso3;
                    s.source = EconSource::override_entry;
                    res.econ[cc.iso3] = std::move(s);
                    econ_ok = true;
                }
            } else {
                EconomicRateSeries s;
                s.iso3 = cc.iso3;
                s.source = EconSource::override_entry;
                s.samples[kNoYear] = o.rate;
                res.econ[cc.iso3] = std::move(s);
                econ_ok = true;
            }
        }
        if (!hazard_ok && ov != overrides.end() && ov->second.is_donor) {
            auto donor = res.hazard.find(ov->second.donor);
            if (donor != res.hazard.end() && donor->second.source == HazardSource::wri) {
                HazardScore h = donor->second;
                h.iso3 = cc.iso3;
                h.source = HazardSource::neighbor_override;
                res.hazard[cc.iso3] = h;
                hazard_ok = true;
            }
        }
        if (!econ_ok || !hazard_ok) unresolved.push_back(cc.iso3);
    }
    if (!unresolved.empty()) {
        throw UnresolvedCountriesError(std::move(unresolved));
    }
    return res;
}

double adjust_to_base_year(double value, int from_year, const std::map<int, double>& inflation,
                           int base_year) {
    if (from_year > base_year) {
        throw Error(Errc::out_of_range, "source year " + std::to_string(from_year) +
                                            " is after the base year " +
                                            std::to_string(base_year));
    }
    double adjusted = value;
    for (int y = from_year + 1; y <= base_year; ++y) {
        auto it = inflation.find(y);
        if (it == inflation.end()) {
            throw Error(Errc::missing_year, "inflation series lacks " + std::to_string(y));
        }
        adjusted *= 1.0 + it->second;
    }
    return adjusted;
}

std::map<int, double> parse_inflation(const std::string& path) {
    csv::Table t = csv::read_file(path);
    const std::size_t cy = t.require_column("year");
    const std::size_t cr = t.require_column("rate");
    std::map<int, double> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::size_t line = t.lines[r];
        int year = parse_year(t.rows[r].at(cy), path, line);
        double rate = csv::parse_double(t.rows[r].at(cr), line, path + ": rate");
        if (rate <= -1.0) {
            throw Error(Errc::malformed_row,
                        where(path, line) + ": inflation rate must exceed -100%");
        }
        if (!out.emplace(year, rate).second) {
            throw Error(Errc::malformed_row,
                        where(path, line) + ": duplicate year " + std::to_string(year));
        }
    }
    return out;
}

RegionCostTable RegionCostTable::load(const std::string& regions_path,
                                      const std::string& assignment_path,
                                      const CountryRegistry& registry,
                                      const std::map<int, double>& inflation) {
    csv::Table t = csv::read_file(regions_path);
    const std::size_t cr = t.require_column("region");
    const std::size_t cwc = t.require_column("wind_capex");
    const std::size_t cpc = t.require_column("pv_capex");
    const std::size_t cwo = t.require_column("wind_opex");
    const std::size_t cpo = t.require_column("pv_opex");
    const int cy = t.column("year");

    RegionCostTable table;
    std::map<std::string, std::pair<RegionCost, int>> sums;  // accumulating mean
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::size_t line = t.lines[r];
        int year = cy >= 0 ? parse_year(row.at(cy), regions_path, line) : kBaseYear;
        RegionCost c;
        c.wind_capex = adjust_to_base_year(
            csv::parse_double(row.at(cwc), line, regions_path + ": wind_capex"), year,
            inflation);
        c.pv_capex = adjust_to_base_year(
            csv::parse_double(row.at(cpc), line, regions_path + ": pv_capex"), year, inflation);
        c.wind_opex = csv::parse_double(row.at(cwo), line, regions_path + ": wind_opex");
        c.pv_opex = csv::parse_double(row.at(cpo), line, regions_path + ": pv_opex");
        if (c.wind_capex <= 0.0 || c.pv_capex <= 0.0) {
            throw Error(Errc::malformed_row, where(regions_path, line) + ": capex must be > 0");
        }
        if (c.wind_opex <= 0.0 || c.wind_opex >= 1.0 || c.pv_opex <= 0.0 || c.pv_opex >= 1.0) {
            throw Error(Errc::malformed_row,
                        where(regions_path, line) + ": opex fraction must be in (0, 1)");
        }
        auto& [sum, count] = sums[row.at(cr)];
        sum.wind_capex += c.wind_capex;
        sum.pv_capex += c.pv_capex;
        sum.wind_opex += c.wind_opex;
        sum.pv_opex += c.pv_opex;
        ++count;
    }
    for (auto& [region, entry] : sums) {
        auto& [sum, count] = entry;
        table.regions_[region] = {sum.wind_capex / count, sum.pv_capex / count,
                                  sum.wind_opex / count, sum.pv_opex / count};
    }

    csv::Table a = csv::read_file(assignment_path);
    const std::size_t ai = a.require_column("iso3");
    const std::size_t ar = a.require_column("region");
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        const std::size_t line = a.lines[r];
        std::string iso3 = normalize_country(registry, a.rows[r].at(ai), assignment_path, line);
        const std::string& region = a.rows[r].at(ar);
        if (table.regions_.find(region) == table.regions_.end()) {
            throw Error(Errc::bad_config,
                        where(assignment_path, line) + ": unknown region '" + region + "'");
        }
        if (!table.assignment_.emplace(iso3, region).second) {
            throw Error(Errc::bad_config,
                        where(assignment_path, line) + ": " + iso3 + " assigned twice");
        }
    }
    std::vector<std::string> missing;
    for (const auto& cc : registry.all()) {
        if (table.assignment_.find(cc.iso3) == table.assignment_.end()) {
            missing.push_back(cc.iso3);
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw Error(Errc::bad_config,
                    assignment_path + ": countries without a region: " + list);
    }
    return table;
}

const std::string& RegionCostTable::region_of(const std::string& iso3) const {
    auto it = assignment_.find(iso3);
    if (it == assignment_.end()) {
        throw Error(Errc::unknown_country, iso3);
    }
    return it->second;
}

const RegionCost& RegionCostTable::for_country(const std::string& iso3) const {
    return regions_.at(region_of(iso3));
}

const RegionCost& RegionCostTable::for_region(const std::string& region) const {
    auto it = regions_.find(region);
    if (it == regions_.end()) {
        throw Error(Errc::bad_config, "unknown region '" + region + "'");
    }
    return it->second;
}

TechnologyTable TechnologyTable::load(const std::string& path) {
    csv::Table t = csv::read_file(path);
    const std::size_t ct = t.require_column("tech");
    const int ci = t.column("iso3");
    const std::size_t cc = t.require_column("capex");
    const std::size_t co = t.require_column("opex_frac");
    const std::size_t cl = t.require_column("lifetime");
    const std::size_t ce = t.require_column("efficiency");
    const std::size_t cce = t.require_column("charge_eff");
    const std::size_t cde = t.require_column("discharge_eff");

    auto number_or = [&](const std::string& field, double fallback, std::size_t line,
                         const std::string& what) {
        return field.empty() ? fallback : csv::parse_double(field, line, path + ": " + what);
    };

    TechnologyTable table;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::size_t line = t.lines[r];
        const std::string& tech = row.at(ct);
        if (tech != "wind" && tech != "pv" && tech != "electrolysis" && tech != "storage") {
            throw Error(Errc::malformed_row, where(path, line) + ": unknown tech '" + tech + "'");
        }
        Row rec;
        rec.capex = number_or(row.at(cc), 0.0, line, "capex");
        rec.opex_frac = number_or(row.at(co), 0.0, line, "opex_frac");
        rec.lifetime = csv::parse_int(row.at(cl), line, path + ": lifetime");
        rec.efficiency = number_or(row.at(ce), 1.0, line, "efficiency");
        rec.charge_eff = number_or(row.at(cce), 1.0, line, "charge_eff");
        rec.discharge_eff = number_or(row.at(cde), 1.0, line, "discharge_eff");
        std::string iso3 = ci >= 0 ? row.at(ci) : std::string();
        if (!table.rows_.emplace(std::make_pair(tech, iso3), rec).second) {
            throw Error(Errc::malformed_row,
                        where(path, line) + ": duplicate row for " + tech +
                            (iso3.empty() ? "" : "/" + iso3));
        }
    }
    for (const char* tech : {"wind", "pv", "electrolysis", "storage"}) {
        if (table.rows_.find({tech, ""}) == table.rows_.end()) {
            throw Error(Errc::bad_config, path + ": missing global row for " + std::string(tech));
        }
    }
    return table;
}

const TechnologyTable::Row& TechnologyTable::pick(const std::string& tech,
                                                  const std::string& iso3) const {
    auto it = rows_.find({tech, iso3});
    if (it == rows_.end()) it = rows_.find({tech, std::string()});
    return it->second;
}

TechnologyTable::TechnologySet TechnologyTable::for_country(
    const std::string& iso3, const RegionCostTable& regions) const {
    const RegionCost& rc = regions.for_country(iso3);
    TechnologySet set;

    const Row& wind = pick("wind", iso3);
    set.wind.name = "wind";
    set.wind.capex = rc.wind_capex;
    set.wind.opex_frac = rc.wind_opex;
    set.wind.lifetime = wind.lifetime;

    const Row& pv = pick("pv", iso3);
    set.pv.name = "pv";
    set.pv.capex = rc.pv_capex;
    set.pv.opex_frac = rc.pv_opex;
    set.pv.lifetime = pv.lifetime;

    const Row& ely = pick("electrolysis", iso3);
    set.ely.name = "electrolysis";
    set.ely.capex = ely.capex;
    set.ely.opex_frac = ely.opex_frac;
    set.ely.lifetime = ely.lifetime;
    set.ely.efficiency = ely.efficiency;

    const Row& st = pick("storage", iso3);
    set.storage.name = "storage";
    set.storage.capex = st.capex;
    set.storage.opex_frac = st.opex_frac;
    set.storage.lifetime = st.lifetime;
    set.storage.charge_eff = st.charge_eff;
    set.storage.discharge_eff = st.discharge_eff;
    return set;
}

std::map<std::string, double> parse_potentials(const std::string& path,
                                               const CountryRegistry& registry) {
    csv::Table t = csv::read_file(path);
    const std::size_t ci = t.require_column("iso3");
    const std::size_t cp = t.require_column("total_potential_kg");
    std::map<std::string, double> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::size_t line = t.lines[r];
        std::string iso3 = normalize_country(registry, t.rows[r].at(ci), path, line);
        double kg = csv::parse_double(t.rows[r].at(cp), line, path + ": total_potential_kg");
        if (kg < 0.0) {
            throw Error(Errc::malformed_row, where(path, line) + ": potential must be >= 0");
        }
        if (!out.emplace(iso3, kg).second) {
            throw Error(Errc::malformed_row, where(path, line) + ": duplicate country " + iso3);
        }
    }
    return out;
}

ProfilePair parse_profile(const std::string& path) {
    csv::Table t = csv::read_file(path);
    const std::size_t cs = t.require_column("step");
    const std::size_t cw = t.require_column("cf_wind");
    const std::size_t cp = t.require_column("cf_pv");
    ProfilePair out;
    out.wind.technology = "wind";
    out.pv.technology = "pv";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::size_t line = t.lines[r];
        int step = csv::parse_int(t.rows[r].at(cs), line, path + ": step");
        if (step != static_cast<int>(r)) {
            throw Error(Errc::malformed_row, where(path, line) + ": steps must run 0,1,2,...");
        }
        double w = csv::parse_double(t.rows[r].at(cw), line, path + ": cf_wind");
        double p = csv::parse_double(t.rows[r].at(cp), line, path + ": cf_pv");
        if (w < 0.0 || w > 1.0 || p < 0.0 || p > 1.0) {
            throw Error(Errc::malformed_row,
                        where(path, line) + ": capacity factors must be in [0, 1]");
        }
        out.wind.values.push_back(w);
        out.pv.values.push_back(p);
    }
    if (out.wind.values.empty()) {
        throw Error(Errc::empty_input, path + ": no profile rows");
    }
    return out;
}

}  // namespace hazardrate::ingest
