#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hazardrate {

enum class Errc {
    malformed_row,
    unknown_country,
    unknown_grade,
    out_of_range,
    missing_year,
    unresolved_country,
    no_data_in_window,
    empty_input,
    degenerate_variance,
    weight_out_of_range,
    negative_rate,
    zero_lifetime,
    infeasible_input,
    infeasible,
    unbounded,
    solver_stall,
    zero_demand,
    negative_input,
    insufficient_data,
    country_mismatch,
    zero_baseline,
    io_error,
    bad_config,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

/// Aborting error for resolve_rates: lists every country that neither a
/// primary source nor the overrides file could supply.
class UnresolvedCountriesError : public Error {
public:
    explicit UnresolvedCountriesError(std::vector<std::string> iso3_list)
        : Error(Errc::unresolved_country, join(iso3_list)), iso3_list_(std::move(iso3_list)) {}

    const std::vector<std::string>& countries() const { return iso3_list_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (const auto& s : v) {
            if (!out.empty()) out += ", ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> iso3_list_;
};

}  // namespace hazardrate
