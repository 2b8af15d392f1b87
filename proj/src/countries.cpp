#include "hazardrate/countries.hpp"

#include <algorithm>
#include <cctype>

#include "hazardrate/csv.hpp"
#include "hazardrate/errors.hpp"

namespace hazardrate {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

bool is_alpha_code(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isalpha(c) != 0; });
}

}  // namespace

CountryRegistry CountryRegistry::load(const std::string& path) {
    auto table = csv::read_file(path);
    auto ci = table.require_column("iso3");
    auto ca2 = table.require_column("alpha2");
    auto cn = table.require_column("name");

    CountryRegistry reg;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        std::string iso3 = upper(row.at(ci));
        if (iso3.size() != 3 || !is_alpha_code(iso3)) {
            throw Error(Errc::malformed_row, path + ": line " + std::to_string(table.lines[r]) +
                                                 ": bad iso3 '" + row.at(ci) + "'");
        }
        CountryCode cc{iso3, row.at(cn)};
        if (!reg.by_iso3_.emplace(iso3, cc).second) {
            throw Error(Errc::malformed_row, path + ": duplicate iso3 " + iso3);
        }
        std::string a2 = upper(row.at(ca2));
        if (!a2.empty()) reg.alpha2_to_iso3_[a2] = iso3;
    }
    reg.sorted_.reserve(reg.by_iso3_.size());
    for (const auto& [_, cc] : reg.by_iso3_) reg.sorted_.push_back(cc);
    return reg;
}

std::optional<std::string> CountryRegistry::normalize(const std::string& code) const {
    std::string c = upper(code);
    if (c.size() == 3 && by_iso3_.count(c)) return c;
    if (c.size() == 2) {
        auto it = alpha2_to_iso3_.find(c);
        if (it != alpha2_to_iso3_.end()) return it->second;
    }
    return std::nullopt;
}

const CountryCode& CountryRegistry::at(const std::string& iso3) const {
    auto it = by_iso3_.find(iso3);
    if (it == by_iso3_.end()) {
        throw Error(Errc::unknown_country, iso3);
    }
    return it->second;
}

}  // namespace hazardrate
