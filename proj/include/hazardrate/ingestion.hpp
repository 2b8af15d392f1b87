#pragma once

#include <map>
#include <string>
#include <vector>

#include "hazardrate/countries.hpp"
#include "hazardrate/energymodel.hpp"

namespace hazardrate::ingest {

// Single-vintage sources publish only their latest revision; such samples
// carry no year and count as present in every averaging window.
constexpr int kNoYear = -1;

enum class EconSource { damodaran, wikirating, credendo, override_entry };
enum class HazardSource { wri, neighbor_override };
const char* to_string(EconSource s);
const char* to_string(HazardSource s);

struct RatingObservation {
    std::string iso3;
    EconSource source = EconSource::damodaran;
    int year = kNoYear;
    std::string raw;    // source-native value as written in the file
    double rate = 0.0;  // mapped onto the common discount-rate scale, [0,1]
};

struct HazardScore {
    std::string iso3;
    double wri = 0.0;  // [0, 100]
    int year = kNoYear;
    HazardSource source = HazardSource::wri;
};

// The 21-step grade ladder shared by the letter-grade sources, best first,
// with strictly increasing rates toward the worst grade.
class GradeTable {
  public:
    static GradeTable load(const std::string& path);
    double rate_for(const std::string& grade) const;  // UNKNOWN_GRADE
    double rate_at(std::size_t index) const;          // OUT_OF_RANGE
    std::size_t size() const { return entries_.size(); }

  private:
    std::vector<std::pair<std::string, double>> entries_;
    std::map<std::string, double> by_label_;
};

// Affine mapping of the 7-point scale onto the 21-entry ladder:
// score s lands on entry round((s-1) * 20 / 6), rounding halves up.
double credendo_to_rate(int score, const GradeTable& table);

// One parser for the three economic sources; `grades` is required for the
// letter-grade and 7-point sources and ignored for spread data.
std::vector<RatingObservation> parse_economic_source(const std::string& path, EconSource kind,
                                                     const CountryRegistry& registry,
                                                     const GradeTable* grades = nullptr);

std::vector<HazardScore> parse_wri(const std::string& path, const CountryRegistry& registry);

// Manual fill-ins for countries no source covers: either "copy that donor
// country's resolved values" or a literal economic rate.
struct Override {
    std::string iso3;
    bool is_donor = false;
    std::string donor;
    double rate = 0.0;
};
std::map<std::string, Override> parse_overrides(const std::string& path,
                                                const CountryRegistry& registry);

struct EconomicRateSeries {
    std::string iso3;
    std::map<int, double> samples;  // year (or kNoYear) -> rate
    EconSource source = EconSource::damodaran;
};

struct ResolvedRates {
    std::map<std::string, EconomicRateSeries> econ;  // complete over the registry
    std::map<std::string, HazardScore> hazard;       // complete over the registry
};

// Ranked-source cascade: spreads beat letter grades beat the 7-point scale
// beat manual overrides for the economic series; measured hazard scores beat
// neighbour overrides.  Donor overrides copy the donor's resolved values for
// both dimensions; literal-rate overrides settle only the economic side.
// Throws UnresolvedCountriesError listing every country left uncovered.
ResolvedRates resolve_rates(const CountryRegistry& registry,
                            const std::vector<RatingObservation>& damodaran,
                            const std::vector<RatingObservation>& wikirating,
                            const std::vector<RatingObservation>& credendo,
                            const std::vector<HazardScore>& wri,
                            const std::map<std::string, Override>& overrides);

// Compound inflation from `from_year` up to the costing base year.
constexpr int kBaseYear = 2023;
double adjust_to_base_year(double value, int from_year, const std::map<int, double>& inflation,
                           int base_year = kBaseYear);

std::map<int, double> parse_inflation(const std::string& path);

struct RegionCost {
    double wind_capex = 0.0;  // USD2023 per kW
    double pv_capex = 0.0;
    double wind_opex = 0.0;  // fraction of capex per year
    double pv_opex = 0.0;
};

// Regional wind/PV cost table plus the country->region assignment.  Regions
// listed on several rows are averaged arithmetically after each row is
// brought to the base year.
class RegionCostTable {
  public:
    static RegionCostTable load(const std::string& regions_path,
                                const std::string& assignment_path,
                                const CountryRegistry& registry,
                                const std::map<int, double>& inflation);
    const RegionCost& for_country(const std::string& iso3) const;
    const RegionCost& for_region(const std::string& region) const;
    const std::string& region_of(const std::string& iso3) const;

  private:
    std::map<std::string, RegionCost> regions_;
    std::map<std::string, std::string> assignment_;
};

// Global techno-economic parameters, with optional per-country override rows
// (an iso3 cell narrows a row to that country).  Wind and PV rows contribute
// lifetimes; their costs come from the regional table.
class TechnologyTable {
  public:
    static TechnologyTable load(const std::string& path);

    struct TechnologySet {
        energy::TechnologyParams wind, pv, ely, storage;
    };
    TechnologySet for_country(const std::string& iso3, const RegionCostTable& regions) const;

  private:
    struct Row {
        double capex = 0.0, opex_frac = 0.0, efficiency = 1.0;
        double charge_eff = 1.0, discharge_eff = 1.0;
        int lifetime = 1;
    };
    const Row& pick(const std::string& tech, const std::string& iso3) const;
    std::map<std::pair<std::string, std::string>, Row> rows_;  // (tech, iso3-or-empty)
};

// iso3 -> technical hydrogen potential in kg/yr.
std::map<std::string, double> parse_potentials(const std::string& path,
                                               const CountryRegistry& registry);

// Per-country profile file (step,cf_wind,cf_pv) with consecutive steps from 0.
struct ProfilePair {
    energy::CapacityFactorProfile wind;
    energy::CapacityFactorProfile pv;
};
ProfilePair parse_profile(const std::string& path);

}  // namespace hazardrate::ingest
