#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hazardrate {

/// ISO 3166 alpha-3 code plus display name.
struct CountryCode {
    std::string iso3;
    std::string name;

    bool operator==(const CountryCode&) const = default;
    auto operator<=>(const CountryCode& other) const { return iso3 <=> other.iso3; }
};

/// The canonical country set (254 entries, Antarctica excluded), loaded from
/// countries.csv. Alpha-2 codes are accepted on input and normalized to
/// alpha-3.
class CountryRegistry {
public:
    static CountryRegistry load(const std::string& path);

    bool contains(const std::string& iso3) const { return by_iso3_.count(iso3) != 0; }

    /// Normalize an alpha-2 or alpha-3 code (any case) to a registry alpha-3
    /// code; nullopt if the code is not in the registry.
    std::optional<std::string> normalize(const std::string& code) const;

    const CountryCode& at(const std::string& iso3) const;

    /// All entries, sorted by iso3.
    const std::vector<CountryCode>& all() const { return sorted_; }

    std::size_t size() const { return sorted_.size(); }

private:
    std::map<std::string, CountryCode> by_iso3_;
    std::map<std::string, std::string> alpha2_to_iso3_;
    std::vector<CountryCode> sorted_;
};

}  // namespace hazardrate
