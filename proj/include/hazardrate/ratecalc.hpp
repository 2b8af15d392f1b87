#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hazardrate/countries.hpp"
#include "hazardrate/ingestion.hpp"

namespace hazardrate::ratecalc {

struct WindowAverage {
    double rate = 0.0;
    int samples_used = 0;
};

// Mean of the samples inside [end_year - window + 1, end_year].  Year-less
// samples (single-vintage sources) count as present in every window.
WindowAverage average_window(const ingest::EconomicRateSeries& series, int end_year,
                             int window);

enum class WriDenominator { observed, fixed100 };

// Hazard scores mapped onto the economic scale: the (chosen) maximum score is
// anchored to the largest averaged economic rate across countries.
std::map<std::string, double> normalize_hazard(
    const std::map<std::string, ingest::HazardScore>& scores,
    const std::map<std::string, double>& econ_avg,
    WriDenominator denom = WriDenominator::observed);

// Convex combination a * i_e + (1 - a) * i_n.
double blend(double i_e, double i_n, double a);

struct Correlation {
    double r = 0.0;
    double p_value = 1.0;
};

// Sample Pearson correlation with a two-sided p-value from the t-statistic.
Correlation pearson_r(const std::vector<double>& x, const std::vector<double>& y);

// P(|T_df| >= t), computed through the regularized incomplete beta function.
double student_t_two_sided_p(double t, int df);

// Verification fallback: share of shuffled pairings at least as correlated.
double permutation_p(const std::vector<double>& x, const std::vector<double>& y,
                     int shuffles = 10000, std::uint32_t seed = 777);

struct DiscountRateRecord {
    std::string iso3;
    std::string name;
    double i_economic = 0.0;
    double i_hazard = 0.0;
    double weight_a = 0.0;
    double weight_b = 0.0;
    double i_final = 0.0;
    ingest::EconSource econ_source = ingest::EconSource::damodaran;
    ingest::HazardSource hazard_source = ingest::HazardSource::wri;
    int window_years = 0;
    int samples_used = 0;
};

// The full per-country table: average, normalize, blend; sorted by iso3.
std::vector<DiscountRateRecord> build_discount_table(const CountryRegistry& registry,
                                                     const ingest::ResolvedRates& resolved,
                                                     int end_year, int window, double a,
                                                     WriDenominator denom);

}  // namespace hazardrate::ratecalc
