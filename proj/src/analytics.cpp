#include "hazardrate/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "hazardrate/csv.hpp"
#include "hazardrate/errors.hpp"

namespace hazardrate::analytics {

double quantile(std::vector<double> values, double p) {
    if (values.empty()) {
        throw Error(Errc::empty_input, "quantile of an empty sample");
    }
    if (p < 0.0 || p > 1.0) {
        throw Error(Errc::out_of_range, "quantile level must be in [0, 1]");
    }
    std::sort(values.begin(), values.end());
    const double h = (values.size() - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - lo) * (values[lo + 1] - values[lo]);
}

YearStats yearly_stats(const std::map<std::string, ingest::EconomicRateSeries>& series,
                       int year) {
    std::vector<std::pair<std::string, double>> present;  // iso3, rate
    for (const auto& [iso3, s] : series) {
        auto it = s.samples.find(year);
        if (it != s.samples.end()) present.emplace_back(iso3, it->second);
    }
    if (present.size() < 4) {
        throw Error(Errc::insufficient_data, "year " + std::to_string(year) + " has " +
                                                 std::to_string(present.size()) +
                                                 " countries; need at least 4");
    }
    std::vector<double> values;
    values.reserve(present.size());
    for (const auto& [_, v] : present) values.push_back(v);

    YearStats st;
    st.year = year;
    st.count = values.size();
    st.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    st.median = quantile(values, 0.5);
    st.q1 = quantile(values, 0.25);
    st.q3 = quantile(values, 0.75);
    st.iqr = st.q3 - st.q1;
    st.min = *std::min_element(values.begin(), values.end());
    st.max = *std::max_element(values.begin(), values.end());
    double ss = 0.0;
    for (double v : values) ss += (v - st.mean) * (v - st.mean);
    st.stddev = std::sqrt(ss / (values.size() - 1));

    const double lo_fence = st.q1 - 1.5 * st.iqr;
    const double hi_fence = st.q3 + 1.5 * st.iqr;
    for (const auto& [iso3, v] : present) {
        if (v < lo_fence || v > hi_fence) st.outliers.emplace_back(iso3, v);
    }
    return st;
}

RangeHistogram range_histogram(const std::map<std::string, ingest::EconomicRateSeries>& series,
                               double bin_width) {
    if (bin_width <= 0.0) {
        throw Error(Errc::out_of_range, "bin width must be positive");
    }
    RangeHistogram h;
    h.bin_width = bin_width;
    for (const auto& [iso3, s] : series) {
        if (s.samples.size() < 2) continue;
        double lo = s.samples.begin()->second, hi = lo;
        for (const auto& [_, v] : s.samples) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        h.ranges[iso3] = hi - lo;
        h.samples[iso3] = static_cast<int>(s.samples.size());
        const auto bin = static_cast<std::size_t>((hi - lo) / bin_width);
        if (bin >= h.counts.size()) h.counts.resize(bin + 1, 0);
        ++h.counts[bin];
    }
    return h;
}

std::vector<ComparisonRecord> compare_schemes(const std::map<std::string, double>& lcoh_a,
                                              const std::map<std::string, double>& lcoh_b) {
    if (lcoh_a.size() != lcoh_b.size() ||
        !std::equal(lcoh_a.begin(), lcoh_a.end(), lcoh_b.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first; })) {
        std::string only_a, only_b;
        for (const auto& [iso3, _] : lcoh_a) {
            if (!lcoh_b.count(iso3)) only_a += " " + iso3;
        }
        for (const auto& [iso3, _] : lcoh_b) {
            if (!lcoh_a.count(iso3)) only_b += " " + iso3;
        }
        throw Error(Errc::country_mismatch,
                    "result sets differ; baseline-only:" + only_a + " alternative-only:" + only_b);
    }
    std::vector<ComparisonRecord> out;
    out.reserve(lcoh_a.size());
    for (const auto& [iso3, a] : lcoh_a) {
        if (a <= 0.0) {
            throw Error(Errc::zero_baseline, iso3 + ": baseline cost must be positive");
        }
        ComparisonRecord r;
        r.iso3 = iso3;
        r.lcoh_a = a;
        r.lcoh_b = lcoh_b.at(iso3);
        r.delta = r.lcoh_b - r.lcoh_a;
        r.rel = r.delta / r.lcoh_a;
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const ComparisonRecord& x, const ComparisonRecord& y) {
        if (x.rel != y.rel) return x.rel > y.rel;
        return x.iso3 < y.iso3;
    });
    return out;
}

std::vector<ComparisonRecord> uniform_gap(const std::map<std::string, double>& specific,
                                          const std::map<std::string, double>& uniform) {
    return compare_schemes(uniform, specific);
}

std::string join_geojson(const std::string& geojson_text,
                         const std::map<std::string, MapProperties>& by_iso3) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(geojson_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::malformed_row, std::string("boundary GeoJSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array()) {
        throw Error(Errc::bad_config, "boundary file is not a GeoJSON FeatureCollection");
    }

    auto iso3_of = [](const nlohmann::ordered_json& feature) -> std::string {
        static const char* keys[] = {"iso3", "ISO3",   "iso_a3", "ISO_A3",
                                     "adm0_a3", "ADM0_A3", "id",     "ID"};
        if (feature.contains("properties") && feature["properties"].is_object()) {
            for (const char* k : keys) {
                const auto& props = feature["properties"];
                if (props.contains(k) && props[k].is_string()) return props[k];
            }
        }
        if (feature.contains("id") && feature["id"].is_string()) return feature["id"];
        return {};
    };

    // Six-decimal rounding keeps the exported numbers aligned with the CSVs.
    auto round6 = [](double v) { return std::stod(csv::format_fixed(v)); };

    for (auto& feature : doc["features"]) {
        std::string code = iso3_of(feature);
        std::transform(code.begin(), code.end(), code.begin(),
                       [](unsigned char c) { return std::toupper(c); });
        auto it = by_iso3.find(code);
        if (it == by_iso3.end()) continue;
        if (!feature.contains("properties") || !feature["properties"].is_object()) {
            feature["properties"] = nlohmann::ordered_json::object();
        }
        feature["properties"]["i_final"] = round6(it->second.i_final);
        feature["properties"]["lcoh"] = round6(it->second.lcoh);
        feature["properties"]["rel_vs_uniform"] = round6(it->second.rel_vs_uniform);
    }
    return doc.dump();
}

}  // namespace hazardrate::analytics
