// Command-line front end: rates, lcoh, compare, stats.  Every run is driven
// by one RunConfig assembled from defaults, an optional key=value config
// file, and flags (flags win); its FNV hash is stamped into each output so
// results can be traced back to the exact configuration that produced them.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hazardrate/analytics.hpp"
#include "hazardrate/countries.hpp"
#include "hazardrate/csv.hpp"
#include "hazardrate/energymodel.hpp"
#include "hazardrate/errors.hpp"
#include "hazardrate/ingestion.hpp"
#include "hazardrate/portfolio.hpp"
#include "hazardrate/ratecalc.hpp"
#include "hazardrate/reports.hpp"

namespace fs = std::filesystem;
using namespace hazardrate;

namespace {

struct RunConfig {
    std::string data_dir = "data";
    std::string out_dir = "out";
    int window = 10;          // averaging window in years
    int end_year = 2024;      // last year included in the window
    double blend_a = 0.75;    // weight on the economic rate
    double uniform_rate = 0.08;
    int resolution = 0;       // target steps per year; 0 keeps the file's
    int jobs = 0;             // solver workers; 0 means all hardware threads
    std::string wri_denominator = "observed";
    std::string countries;    // comma-separated iso3 filter (lcoh)
    std::string rates_file;   // per-country rates; empty means uniform mode
    std::string geojson_file; // boundary collection to join (compare)
    int top = 10;             // comparison rows printed to stdout
};

void validate(const RunConfig& c) {
    if (c.window < 1) {
        throw Error(Errc::bad_config, "window must be at least 1 year");
    }
    if (c.blend_a < 0.0 || c.blend_a > 1.0) {
        throw Error(Errc::bad_config, "blend weight must lie in [0, 1]");
    }
    if (c.uniform_rate < 0.0) {
        throw Error(Errc::bad_config, "uniform rate must be non-negative");
    }
    if (c.resolution < 0) {
        throw Error(Errc::bad_config, "resolution must be non-negative");
    }
    if (c.jobs < 0) {
        throw Error(Errc::bad_config, "jobs must be non-negative");
    }
    if (c.top < 1) {
        throw Error(Errc::bad_config, "top must be at least 1");
    }
    if (c.wri_denominator != "observed" && c.wri_denominator != "fixed100") {
        throw Error(Errc::bad_config,
                    "wri-denominator must be 'observed' or 'fixed100', got '" +
                        c.wri_denominator + "'");
    }
}

ratecalc::WriDenominator denominator(const RunConfig& c) {
    return c.wri_denominator == "fixed100" ? ratecalc::WriDenominator::fixed100
                                           : ratecalc::WriDenominator::observed;
}

// Canonical one-line-per-key rendering of the effective configuration; the
// hash of this text is the provenance stamp on every output file.  Only keys
// that influence computed values participate: the output directory and the
// worker count change nothing, so runs that compute the same thing carry the
// same stamp.
std::string config_comment(const RunConfig& c, const std::string& command,
                           const std::string& baseline = "",
                           const std::string& alternative = "") {
    std::string text = "command=" + command + "\n";
    if (!baseline.empty()) text += "baseline=" + baseline + "\n";
    if (!alternative.empty()) text += "alternative=" + alternative + "\n";
    text += "blend-a=" + csv::format_fixed(c.blend_a) + "\n";
    text += "countries=" + c.countries + "\n";
    text += "data-dir=" + c.data_dir + "\n";
    text += "end-year=" + std::to_string(c.end_year) + "\n";
    text += "geojson=" + c.geojson_file + "\n";
    text += "rates=" + c.rates_file + "\n";
    text += "resolution=" + std::to_string(c.resolution) + "\n";
    text += "top=" + std::to_string(c.top) + "\n";
    text += "uniform-rate=" + csv::format_fixed(c.uniform_rate) + "\n";
    text += "window=" + std::to_string(c.window) + "\n";
    text += "wri-denominator=" + c.wri_denominator + "\n";
    return "config " + reports::hex16(reports::fnv1a64(text));
}

// Inputs live under the data root; generated fixture sets keep the rating
// and per-country files one level down, so fall back there before giving up
// and letting the loader report the miss on the direct path.
std::string input_path(const RunConfig& c, const std::string& name) {
    fs::path direct = fs::path(c.data_dir) / name;
    if (fs::exists(direct)) return direct.string();
    fs::path nested = fs::path(c.data_dir) / "fixtures" / name;
    if (fs::exists(nested)) return nested.string();
    return direct.string();
}

std::string output_path(const RunConfig& c, const std::string& name) {
    fs::create_directories(c.out_dir);
    return (fs::path(c.out_dir) / name).string();
}

CountryRegistry load_registry(const RunConfig& c) {
    return CountryRegistry::load(input_path(c, "countries.csv"));
}

// The lcoh country list: either the full registry or the --countries filter,
// normalized (alpha-2 accepted) and deduplicated, sorted by iso3.
std::vector<std::string> select_countries(const RunConfig& c, const CountryRegistry& registry) {
    std::vector<std::string> out;
    if (c.countries.empty()) {
        for (const auto& entry : registry.all()) out.push_back(entry.iso3);
        return out;
    }
    std::stringstream list(c.countries);
    std::string code;
    while (std::getline(list, code, ',')) {
        code.erase(0, code.find_first_not_of(" \t"));
        code.erase(code.find_last_not_of(" \t") + 1);
        if (code.empty()) continue;
        auto iso3 = registry.normalize(code);
        if (!iso3) {
            throw Error(Errc::unknown_country, "'" + code + "' in --countries");
        }
        out.push_back(*iso3);
    }
    if (out.empty()) {
        throw Error(Errc::bad_config, "--countries selected nothing");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<std::string, double> read_rates_file(const std::string& path) {
    csv::Table table = csv::read_file(path);
    std::size_t c_iso3 = table.require_column("iso3");
    std::size_t c_rate = table.require_column("i_final");
    std::map<std::string, double> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out[table.rows[r][c_iso3]] =
            csv::parse_double(table.rows[r][c_rate], table.lines[r], "i_final");
    }
    return out;
}

// Solved rows of a results file; failed countries carry no cost and are
// excluded, so comparing runs with different failure sets is reported as a
// country mismatch rather than silently misaligned.
std::map<std::string, double> read_lcoh_file(const std::string& path) {
    csv::Table table = csv::read_file(path);
    std::size_t c_iso3 = table.require_column("iso3");
    std::size_t c_status = table.require_column("status");
    std::size_t c_lcoh = table.require_column("lcoh_usd_per_kg");
    std::map<std::string, double> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r][c_status] != "ok") continue;
        out[table.rows[r][c_iso3]] =
            csv::parse_double(table.rows[r][c_lcoh], table.lines[r], "lcoh_usd_per_kg");
    }
    return out;
}

// Block-average a profile down to `resolution` steps per year.  The file's
// step count must be an exact multiple; refusing to resample otherwise keeps
// every output step an honest mean of whole input steps.
energy::CapacityFactorProfile downsample(const energy::CapacityFactorProfile& in,
                                         int resolution) {
    const std::size_t steps = in.values.size();
    if (resolution == 0 || static_cast<std::size_t>(resolution) == steps) return in;
    if (static_cast<std::size_t>(resolution) > steps || steps % resolution != 0) {
        throw Error(Errc::bad_config,
                    "resolution " + std::to_string(resolution) + " does not divide the " +
                        std::to_string(steps) + "-step profile");
    }
    const std::size_t block = steps / resolution;
    energy::CapacityFactorProfile out;
    out.technology = in.technology;
    out.values.reserve(resolution);
    for (std::size_t b = 0; b < static_cast<std::size_t>(resolution); ++b) {
        double sum = 0.0;
        for (std::size_t k = 0; k < block; ++k) sum += in.values[b * block + k];
        out.values.push_back(sum / static_cast<double>(block));
    }
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_error, "cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int cmd_rates(const RunConfig& c) {
    CountryRegistry registry = load_registry(c);
    ingest::GradeTable grades = ingest::GradeTable::load(input_path(c, "grade_table.csv"));
    auto damodaran = ingest::parse_economic_source(input_path(c, "damodaran.csv"),
                                                   ingest::EconSource::damodaran, registry);
    auto wikirating = ingest::parse_economic_source(
        input_path(c, "wikirating.csv"), ingest::EconSource::wikirating, registry, &grades);
    auto credendo = ingest::parse_economic_source(
        input_path(c, "credendo.csv"), ingest::EconSource::credendo, registry, &grades);
    auto wri = ingest::parse_wri(input_path(c, "wri.csv"), registry);
    auto overrides = ingest::parse_overrides(input_path(c, "overrides.csv"), registry);

    ingest::ResolvedRates resolved =
        ingest::resolve_rates(registry, damodaran, wikirating, credendo, wri, overrides);
    auto table = ratecalc::build_discount_table(registry, resolved, c.end_year, c.window,
                                                c.blend_a, denominator(c));

    std::string path = output_path(c, "discount_rates.csv");
    reports::write_discount_rates(path, table, config_comment(c, "rates"));
    std::cout << "wrote " << path << " (" << table.size() << " countries)\n";
    return 0;
}

int cmd_lcoh(const RunConfig& c) {
    CountryRegistry registry = load_registry(c);
    auto inflation = ingest::parse_inflation(input_path(c, "inflation.csv"));
    auto regions = ingest::RegionCostTable::load(input_path(c, "regions.csv"),
                                                 input_path(c, "country_regions.csv"),
                                                 registry, inflation);
    auto technologies = ingest::TechnologyTable::load(input_path(c, "technologies.csv"));
    auto potentials = ingest::parse_potentials(input_path(c, "potentials.csv"), registry);

    std::map<std::string, double> rate_of;
    if (!c.rates_file.empty()) rate_of = read_rates_file(c.rates_file);

    std::vector<std::string> wanted = select_countries(c, registry);

    // Countries without a dedicated profile share the default one; parse each
    // distinct file once.
    std::map<std::string, ingest::ProfilePair> profile_cache;
    auto profile_for = [&](const std::string& iso3) -> const ingest::ProfilePair& {
        std::string path = input_path(c, "profiles/" + iso3 + ".csv");
        if (!fs::exists(path)) path = input_path(c, "profiles/default.csv");
        auto it = profile_cache.find(path);
        if (it == profile_cache.end()) {
            it = profile_cache.emplace(path, ingest::parse_profile(path)).first;
        }
        return it->second;
    };

    // Assemble what we can; a country that fails assembly gets a status row
    // instead of aborting the batch.
    std::vector<portfolio::CountryRun> out(wanted.size());
    std::vector<energy::SystemCase> cases;
    std::vector<std::size_t> slot;
    for (std::size_t i = 0; i < wanted.size(); ++i) {
        const std::string& iso3 = wanted[i];
        try {
            double rate = c.uniform_rate;
            if (!c.rates_file.empty()) {
                auto it = rate_of.find(iso3);
                if (it == rate_of.end()) {
                    throw Error(Errc::unknown_country,
                                "'" + c.rates_file + "' has no rate for " + iso3);
                }
                rate = it->second;
            }
            auto pot = potentials.find(iso3);
            if (pot == potentials.end()) {
                throw Error(Errc::unknown_country, "no hydrogen potential for " + iso3);
            }
            const ingest::ProfilePair& profile = profile_for(iso3);
            ingest::TechnologyTable::TechnologySet tech =
                technologies.for_country(iso3, regions);

            energy::SystemCase sc;
            sc.iso3 = iso3;
            sc.discount_rate = rate;
            sc.wind = downsample(profile.wind, c.resolution);
            sc.pv = downsample(profile.pv, c.resolution);
            sc.annual_demand_kg = energy::demand_from_potential(pot->second);
            sc.wind_tech = tech.wind;
            sc.pv_tech = tech.pv;
            sc.ely_tech = tech.ely;
            sc.storage_tech = tech.storage;
            cases.push_back(std::move(sc));
            slot.push_back(i);
        } catch (const Error& e) {
            out[i].iso3 = iso3;
            out[i].ok = false;
            out[i].status = errc_name(e.code());
        }
    }

    int jobs = c.jobs > 0 ? c.jobs
                          : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    auto runs = portfolio::run_cases(cases, jobs);
    for (std::size_t j = 0; j < runs.size(); ++j) out[slot[j]] = std::move(runs[j]);

    std::string path = output_path(c, "lcoh.csv");
    reports::write_lcoh(path, out, config_comment(c, "lcoh"));

    std::size_t solved = 0;
    for (const auto& run : out) solved += run.ok ? 1 : 0;
    std::cout << "wrote " << path << "\n"
              << "solved " << solved << " failed " << (out.size() - solved) << "\n";
    return 0;
}

int cmd_compare(const RunConfig& c, const std::string& baseline, const std::string& alternative) {
    auto lcoh_a = read_lcoh_file(baseline);
    auto lcoh_b = read_lcoh_file(alternative);
    auto records = analytics::compare_schemes(lcoh_a, lcoh_b);

    std::string path = output_path(c, "comparison.csv");
    std::string comment = config_comment(c, "compare", baseline, alternative);
    reports::write_comparison(path, records, comment);

    std::cout << "iso3  lcoh_base  lcoh_new   delta      rel\n";
    std::size_t shown = std::min<std::size_t>(records.size(), static_cast<std::size_t>(c.top));
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& r = records[i];
        std::cout << r.iso3 << "   " << csv::format_fixed(r.lcoh_a) << "  "
                  << csv::format_fixed(r.lcoh_b) << "  " << csv::format_fixed(r.delta) << "  "
                  << csv::format_fixed(r.rel) << "\n";
    }
    std::cout << "wrote " << path << " (" << records.size() << " countries)\n";

    if (!c.geojson_file.empty()) {
        if (c.rates_file.empty()) {
            throw Error(Errc::bad_config,
                        "--geojson needs --rates to fill the i_final map property");
        }
        auto rates = read_rates_file(c.rates_file);
        std::map<std::string, analytics::MapProperties> properties;
        for (const auto& r : records) {
            analytics::MapProperties p;
            auto it = rates.find(r.iso3);
            p.i_final = it == rates.end() ? 0.0 : it->second;
            p.lcoh = r.lcoh_b;
            p.rel_vs_uniform = r.rel;
            properties[r.iso3] = p;
        }
        std::string joined = analytics::join_geojson(slurp(c.geojson_file), properties);
        // GeoJSON has no comment syntax, so the provenance stamp becomes a
        // root-level member instead of a '#' header line.
        auto doc = nlohmann::ordered_json::parse(joined);
        doc["config"] = comment.substr(std::string("config ").size());
        std::string map_path = output_path(c, "countries.geojson");
        std::ofstream map_out(map_path, std::ios::binary | std::ios::trunc);
        map_out << doc.dump() << "\n";
        if (!map_out) {
            throw Error(Errc::io_error, "short write to '" + map_path + "'");
        }
        std::cout << "wrote " << map_path << "\n";
    }
    return 0;
}

int cmd_stats(const RunConfig& c) {
    CountryRegistry registry = load_registry(c);
    auto observations = ingest::parse_economic_source(input_path(c, "damodaran.csv"),
                                                      ingest::EconSource::damodaran, registry);

    std::map<std::string, ingest::EconomicRateSeries> series;
    std::set<int> years;
    for (const auto& obs : observations) {
        auto& entry = series[obs.iso3];
        entry.iso3 = obs.iso3;
        entry.source = obs.source;
        entry.samples[obs.year] = obs.rate;
        if (obs.year != ingest::kNoYear) years.insert(obs.year);
    }

    // One row per year with enough countries for quartiles; sparse years are
    // skipped rather than fatal.
    std::vector<analytics::YearStats> stats;
    for (int year : years) {
        try {
            stats.push_back(analytics::yearly_stats(series, year));
        } catch (const Error& e) {
            if (e.code() != Errc::insufficient_data) throw;
        }
    }
    analytics::RangeHistogram histogram = analytics::range_histogram(series);

    std::string comment = config_comment(c, "stats");
    std::string stats_path = output_path(c, "stats.csv");
    std::string ranges_path = output_path(c, "ranges.csv");
    std::string histogram_path = output_path(c, "histogram.csv");
    reports::write_stats(stats_path, stats, comment);
    reports::write_ranges(ranges_path, histogram, comment);
    reports::write_histogram(histogram_path, histogram, comment);
    std::cout << "wrote " << stats_path << " (" << stats.size() << " years)\n"
              << "wrote " << ranges_path << " (" << histogram.ranges.size() << " countries)\n"
              << "wrote " << histogram_path << " (" << histogram.counts.size() << " bins)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"country-specific discount rates and levelized hydrogen costs"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.set_config("--config", "", "key=value configuration file; flags override");
    app.add_option("--data-dir", cfg.data_dir, "input data root")
        ->envname("HAZARDRATE_DATA_DIR")
        ->capture_default_str();
    app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    app.add_option("--window", cfg.window, "averaging window in years")->capture_default_str();
    app.add_option("--end-year", cfg.end_year, "last year of the averaging window")
        ->capture_default_str();
    app.add_option("--blend-a", cfg.blend_a, "weight on the economic rate")
        ->capture_default_str();
    app.add_option("--uniform-rate", cfg.uniform_rate,
                   "discount rate applied everywhere when no rates file is given")
        ->capture_default_str();
    app.add_option("--countries", cfg.countries, "comma-separated iso3 filter");
    app.add_option("--resolution", cfg.resolution,
                   "steps per year after block-averaging; 0 keeps the profile resolution")
        ->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "parallel solves; 0 uses all hardware threads")
        ->capture_default_str();
    app.add_option("--wri-denominator", cfg.wri_denominator,
                   "hazard-score denominator: observed or fixed100")
        ->capture_default_str();
    app.add_option("--rates", cfg.rates_file, "discount-rate table for lcoh/compare");
    app.add_option("--geojson", cfg.geojson_file, "boundary collection joined by compare");
    app.add_option("--top", cfg.top, "comparison rows printed")->capture_default_str();

    CLI::App* rates = app.add_subcommand("rates", "build the per-country discount-rate table");
    CLI::App* lcoh = app.add_subcommand("lcoh", "size systems and write per-country costs");
    CLI::App* compare = app.add_subcommand("compare", "diff two lcoh result files");
    app.add_subcommand("stats", "cross-country rate distribution tables");

    std::string baseline, alternative;
    compare->add_option("baseline", baseline, "lcoh.csv of the baseline scheme")->required();
    compare->add_option("alternative", alternative, "lcoh.csv of the alternative scheme")
        ->required();

    (void)rates;
    (void)lcoh;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        validate(cfg);
        if (app.got_subcommand("rates")) return cmd_rates(cfg);
        if (app.got_subcommand("lcoh")) return cmd_lcoh(cfg);
        if (app.got_subcommand("compare")) return cmd_compare(cfg, baseline, alternative);
        return cmd_stats(cfg);
    } catch (const UnresolvedCountriesError& e) {
        std::cerr << "unresolved countries (" << e.countries().size() << "):";
        for (const auto& iso3 : e.countries()) std::cerr << ' ' << iso3;
        std::cerr << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
