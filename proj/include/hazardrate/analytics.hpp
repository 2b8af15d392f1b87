#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hazardrate/ingestion.hpp"

namespace hazardrate::analytics {

// Cross-country distribution of economic rates for one calendar year.
struct YearStats {
    int year = 0;
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    double stddev = 0.0;  // sample standard deviation
    double min = 0.0;
    double max = 0.0;
    // Countries outside [q1 - 1.5 iqr, q3 + 1.5 iqr], sorted by iso3.
    std::vector<std::pair<std::string, double>> outliers;
};

// Inclusive linear-interpolation quantile (the R "type 7" convention):
// h = (n-1)p, result = v[floor(h)] + frac(h) * (v[floor(h)+1] - v[floor(h)]).
// Sorts a copy; p must lie in [0, 1].
double quantile(std::vector<double> values, double p);

// Distribution over all countries that have a sample for `year`.
// Requires at least four such countries.
YearStats yearly_stats(const std::map<std::string, ingest::EconomicRateSeries>& series,
                       int year);

// Per-country spread of economic rates over time, plus a binned summary.
// Countries with fewer than two samples are skipped: a spread needs two
// observations.
struct RangeHistogram {
    double bin_width = 0.01;
    std::map<std::string, double> ranges;          // iso3 -> max - min
    std::map<std::string, int> samples;            // iso3 -> sample count
    std::vector<std::size_t> counts;               // bin k covers [k*w, (k+1)*w)
};
RangeHistogram range_histogram(const std::map<std::string, ingest::EconomicRateSeries>& series,
                               double bin_width = 0.01);

// One country's cost under two discounting schemes.
struct ComparisonRecord {
    std::string iso3;
    double lcoh_a = 0.0;  // baseline scheme, USD/kg
    double lcoh_b = 0.0;  // alternative scheme, USD/kg
    double delta = 0.0;   // lcoh_b - lcoh_a
    double rel = 0.0;     // (lcoh_b - lcoh_a) / lcoh_a
};

// Pairs up two LCOH maps over the identical country set. Sorted descending
// by rel (ties broken by iso3) so the biggest gainers print first.
std::vector<ComparisonRecord> compare_schemes(const std::map<std::string, double>& lcoh_a,
                                              const std::map<std::string, double>& lcoh_b);

// Gap of a country-specific scheme against a uniform-rate baseline; the
// uniform results are the comparison baseline.
std::vector<ComparisonRecord> uniform_gap(const std::map<std::string, double>& specific,
                                          const std::map<std::string, double>& uniform);

// Values attached to each matched boundary feature.
struct MapProperties {
    double i_final = 0.0;
    double lcoh = 0.0;
    double rel_vs_uniform = 0.0;
};

// Joins per-country values onto a boundary FeatureCollection. Features are
// matched by an iso3-like property (iso3 / iso_a3 / adm0_a3, any case) or the
// feature id; unmatched features pass through untouched. The feature count is
// preserved. Returns the serialized document.
std::string join_geojson(const std::string& geojson_text,
                         const std::map<std::string, MapProperties>& by_iso3);

}  // namespace hazardrate::analytics
