#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hazardrate/analytics.hpp"
#include "hazardrate/portfolio.hpp"
#include "hazardrate/ratecalc.hpp"

namespace hazardrate::reports {

// FNV-1a over the canonical run-configuration text; the hex digest goes into
// every output file's comment header so results can be traced to their run.
std::uint64_t fnv1a64(std::string_view text);
std::string hex16(std::uint64_t value);

// All writers emit a '# <comment>' first line, a header row, then fixed
// 6-decimal data rows in a deterministic order.
void write_discount_rates(const std::string& path,
                          const std::vector<ratecalc::DiscountRateRecord>& records,
                          const std::string& comment);

void write_lcoh(const std::string& path, const std::vector<portfolio::CountryRun>& runs,
                const std::string& comment);

void write_comparison(const std::string& path,
                      const std::vector<analytics::ComparisonRecord>& records,
                      const std::string& comment);

void write_stats(const std::string& path, const std::vector<analytics::YearStats>& stats,
                 const std::string& comment);

void write_ranges(const std::string& path, const analytics::RangeHistogram& hist,
                  const std::string& comment);

void write_histogram(const std::string& path, const analytics::RangeHistogram& hist,
                     const std::string& comment);

}  // namespace hazardrate::reports
