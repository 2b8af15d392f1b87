#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hazardrate::csv {

/// One parsed CSV file: header row plus data rows. `line` is the 1-based
/// physical line each row came from, for error reporting.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;

    /// Column index by header name, or -1.
    int column(const std::string& name) const;
    /// Column index by header name; throws Errc::malformed_row if absent.
    std::size_t require_column(const std::string& name) const;
};

/// RFC-4180-ish reader: quoted fields, embedded commas/quotes, UTF-8 BOM,
/// CRLF. Lines starting with '#' are comments (output files carry a
/// provenance comment header and must stay re-readable).
Table read_file(const std::string& path);
Table parse(const std::string& text, const std::string& origin);

double parse_double(const std::string& field, std::size_t line, const std::string& what);
int parse_int(const std::string& field, std::size_t line, const std::string& what);

/// Fixed 6-decimal float formatting; all numeric CSV output goes through
/// this so reruns are byte-identical.
std::string format_fixed(double value);

std::string escape_field(const std::string& field);

class Writer {
public:
    explicit Writer(std::string comment = "");
    void row(const std::vector<std::string>& fields);
    const std::string& str() const { return out_; }
    void write_file(const std::string& path) const;

private:
    std::string out_;
};

}  // namespace hazardrate::csv
