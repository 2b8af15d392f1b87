#include "hazardrate/reports.hpp"

#include <array>

#include "hazardrate/csv.hpp"

namespace hazardrate::reports {

using csv::format_fixed;

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex16(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

void write_discount_rates(const std::string& path,
                          const std::vector<ratecalc::DiscountRateRecord>& records,
                          const std::string& comment) {
    csv::Writer w(comment);
    w.row({"iso3", "name", "i_economic", "i_hazard", "weight_a", "weight_b", "i_final",
           "econ_source", "hazard_source", "window_years", "samples_used"});
    for (const auto& r : records) {
        w.row({r.iso3, r.name, format_fixed(r.i_economic), format_fixed(r.i_hazard),
               format_fixed(r.weight_a), format_fixed(r.weight_b), format_fixed(r.i_final),
               ingest::to_string(r.econ_source), ingest::to_string(r.hazard_source),
               std::to_string(r.window_years), std::to_string(r.samples_used)});
    }
    w.write_file(path);
}

void write_lcoh(const std::string& path, const std::vector<portfolio::CountryRun>& runs,
                const std::string& comment) {
    csv::Writer w(comment);
    w.row({"iso3", "status", "lcoh_usd_per_kg", "cap_wind_kw", "cap_pv_kw", "cap_ely_kw",
           "cap_storage_kwh", "objective_usd_yr"});
    for (const auto& r : runs) {
        if (!r.ok) {
            w.row({r.iso3, r.status, "", "", "", "", "", ""});
            continue;
        }
        const auto& s = r.result.solution;
        w.row({r.iso3, r.status, format_fixed(r.result.lcoh_usd_per_kg),
               format_fixed(s.cap_wind), format_fixed(s.cap_pv), format_fixed(s.cap_ely),
               format_fixed(s.cap_storage), format_fixed(s.objective_usd_yr)});
    }
    w.write_file(path);
}

void write_comparison(const std::string& path,
                      const std::vector<analytics::ComparisonRecord>& records,
                      const std::string& comment) {
    csv::Writer w(comment);
    w.row({"iso3", "lcoh_base", "lcoh_new", "delta", "rel"});
    for (const auto& r : records) {
        w.row({r.iso3, format_fixed(r.lcoh_a), format_fixed(r.lcoh_b), format_fixed(r.delta),
               format_fixed(r.rel)});
    }
    w.write_file(path);
}

void write_stats(const std::string& path, const std::vector<analytics::YearStats>& stats,
                 const std::string& comment) {
    csv::Writer w(comment);
    w.row({"year", "count", "mean", "median", "q1", "q3", "iqr", "std", "min", "max",
           "outliers"});
    for (const auto& st : stats) {
        std::string outliers;
        for (const auto& [iso3, _] : st.outliers) {
            if (!outliers.empty()) outliers += ';';
            outliers += iso3;
        }
        w.row({std::to_string(st.year), std::to_string(st.count), format_fixed(st.mean),
               format_fixed(st.median), format_fixed(st.q1), format_fixed(st.q3),
               format_fixed(st.iqr), format_fixed(st.stddev), format_fixed(st.min),
               format_fixed(st.max), outliers});
    }
    w.write_file(path);
}

void write_ranges(const std::string& path, const analytics::RangeHistogram& hist,
                  const std::string& comment) {
    csv::Writer w(comment);
    w.row({"iso3", "range", "samples"});
    for (const auto& [iso3, range] : hist.ranges) {
        w.row({iso3, format_fixed(range), std::to_string(hist.samples.at(iso3))});
    }
    w.write_file(path);
}

void write_histogram(const std::string& path, const analytics::RangeHistogram& hist,
                     const std::string& comment) {
    csv::Writer w(comment);
    w.row({"bin_start", "bin_end", "count"});
    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
        w.row({format_fixed(k * hist.bin_width), format_fixed((k + 1) * hist.bin_width),
               std::to_string(hist.counts[k])});
    }
    w.write_file(path);
}

}  // namespace hazardrate::reports
