#include "hazardrate/ratecalc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hazardrate/errors.hpp"

namespace hazardrate::ratecalc {

namespace {

// Continued-fraction core of the regularized incomplete beta function
// (modified Lentz iteration).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * betacf(a, b, x) / a;
    }
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double raw_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        throw Error(Errc::degenerate_variance, "a zero-variance input has no correlation");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

WindowAverage average_window(const ingest::EconomicRateSeries& series, int end_year,
                             int window) {
    if (window < 1) {
        throw Error(Errc::out_of_range, "averaging window must be >= 1 year");
    }
    const int first = end_year - window + 1;
    double sum = 0.0;
    int used = 0;
    for (const auto& [year, rate] : series.samples) {
        if (year == ingest::kNoYear || (year >= first && year <= end_year)) {
            sum += rate;
            ++used;
        }
    }
    if (used == 0) {
        throw Error(Errc::no_data_in_window,
                    series.iso3 + ": no samples in [" + std::to_string(first) + ", " +
                        std::to_string(end_year) + "]");
    }
    return {sum / used, used};
}

std::map<std::string, double> normalize_hazard(
    const std::map<std::string, ingest::HazardScore>& scores,
    const std::map<std::string, double>& econ_avg, WriDenominator denom) {
    if (scores.empty() || econ_avg.empty()) {
        throw Error(Errc::empty_input, "hazard normalization needs scores and economic rates");
    }
    double max_econ = 0.0;
    for (const auto& [_, rate] : econ_avg) max_econ = std::max(max_econ, rate);
    double denominator = 100.0;
    if (denom == WriDenominator::observed) {
        denominator = 0.0;
        for (const auto& [_, h] : scores) denominator = std::max(denominator, h.wri);
        if (denominator <= 0.0) {
            throw Error(Errc::empty_input, "every hazard score is zero");
        }
    }
    std::map<std::string, double> out;
    for (const auto& [iso3, h] : scores) {
        out[iso3] = h.wri / denominator * max_econ;
    }
    return out;
}

double blend(double i_e, double i_n, double a) {
    if (a < 0.0 || a > 1.0) {
        throw Error(Errc::weight_out_of_range, "blend weight must be in [0, 1]");
    }
    if (i_e < 0.0 || i_e > 1.0 || i_n < 0.0 || i_n > 1.0) {
        throw Error(Errc::out_of_range, "rates must be in [0, 1]");
    }
    return a * i_e + (1.0 - a) * i_n;
}

double student_t_two_sided_p(double t, int df) {
    if (df < 1) {
        throw Error(Errc::out_of_range, "degrees of freedom must be >= 1");
    }
    const double x = df / (df + t * t);
    return reg_inc_beta(df / 2.0, 0.5, x);
}

Correlation pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw Error(Errc::country_mismatch, "correlation inputs differ in length");
    }
    if (x.size() < 3) {
        throw Error(Errc::insufficient_data, "correlation needs at least 3 pairs");
    }
    Correlation c;
    c.r = raw_pearson(x, y);
    const double one_minus_r2 = 1.0 - c.r * c.r;
    if (one_minus_r2 <= 0.0) {
        c.p_value = 0.0;
        return c;
    }
    const int df = static_cast<int>(x.size()) - 2;
    const double t = c.r * std::sqrt(df / one_minus_r2);
    c.p_value = student_t_two_sided_p(t, df);
    return c;
}

double permutation_p(const std::vector<double>& x, const std::vector<double>& y, int shuffles,
                     std::uint32_t seed) {
    const double observed = std::fabs(raw_pearson(x, y));
    std::mt19937 rng(seed);
    std::vector<double> shuffled = y;
    int at_least = 0;
    for (int s = 0; s < shuffles; ++s) {
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        if (std::fabs(raw_pearson(x, shuffled)) >= observed - 1e-12) ++at_least;
    }
    return (at_least + 1.0) / (shuffles + 1.0);
}

std::vector<DiscountRateRecord> build_discount_table(const CountryRegistry& registry,
                                                     const ingest::ResolvedRates& resolved,
                                                     int end_year, int window, double a,
                                                     WriDenominator denom) {
    std::map<std::string, double> avgs;
    std::map<std::string, int> counts;
    for (const auto& cc : registry.all()) {
        auto it = resolved.econ.find(cc.iso3);
        if (it == resolved.econ.end()) {
            throw Error(Errc::unknown_country, cc.iso3 + " missing from resolved rates");
        }
        WindowAverage wa = average_window(it->second, end_year, window);
        avgs[cc.iso3] = wa.rate;
        counts[cc.iso3] = wa.samples_used;
    }
    std::map<std::string, double> hazard = normalize_hazard(resolved.hazard, avgs, denom);

    std::vector<DiscountRateRecord> out;
    out.reserve(registry.size());
    for (const auto& cc : registry.all()) {
        DiscountRateRecord rec;
        rec.iso3 = cc.iso3;
        rec.name = cc.name;
        rec.i_economic = avgs.at(cc.iso3);
        rec.i_hazard = hazard.at(cc.iso3);
        rec.weight_a = a;
        rec.weight_b = 1.0 - a;
        rec.i_final = blend(rec.i_economic, rec.i_hazard, a);
        rec.econ_source = resolved.econ.at(cc.iso3).source;
        rec.hazard_source = resolved.hazard.at(cc.iso3).source;
        rec.window_years = window;
        rec.samples_used = counts.at(cc.iso3);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace hazardrate::ratecalc
