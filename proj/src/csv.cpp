#include "hazardrate/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hazardrate/errors.hpp"

namespace hazardrate::csv {

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::size_t Table::require_column(const std::string& name) const {
    int idx = column(name);
    if (idx < 0) {
        throw Error(Errc::malformed_row, "missing required column '" + name + "'");
    }
    return static_cast<std::size_t>(idx);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_record(const std::string& line, std::size_t lineno,
                                      const std::string& origin) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) {
        throw Error(Errc::malformed_row,
                    origin + ":" + std::to_string(lineno) + ": unterminated quote");
    }
    fields.push_back(trim(cur));
    return fields;
}

}  // namespace

Table parse(const std::string& text, const std::string& origin) {
    Table table;
    std::size_t pos = 0;
    // strip UTF-8 BOM
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) pos = 3;

    std::size_t lineno = 0;
    while (pos <= text.size()) {
        if (pos == text.size()) break;
        std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = eol == std::string::npos ? text.size() : eol + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_record(line, lineno, origin);
        if (table.header.empty()) {
            table.header = std::move(fields);
        } else {
            table.rows.push_back(std::move(fields));
            table.lines.push_back(lineno);
        }
    }
    if (table.header.empty()) {
        throw Error(Errc::malformed_row, origin + ": empty file (header row required)");
    }
    return table;
}

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_error, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

double parse_double(const std::string& field, std::size_t line, const std::string& what) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE) {
        throw Error(Errc::malformed_row,
                    "line " + std::to_string(line) + ": bad " + what + " '" + field + "'");
    }
    return v;
}

int parse_int(const std::string& field, std::size_t line, const std::string& what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error(Errc::malformed_row,
                    "line " + std::to_string(line) + ": bad " + what + " '" + field + "'");
    }
    return v;
}

std::string format_fixed(double value) {
    // normalize -0.000000 so equal values serialize identically
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

std::string escape_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

Writer::Writer(std::string comment) {
    if (!comment.empty()) {
        out_ = "# " + comment + "\n";
    }
}

void Writer::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ += ',';
        out_ += escape_field(fields[i]);
    }
    out_ += '\n';
}

void Writer::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(Errc::io_error, "cannot write '" + path + "'");
    }
    out << out_;
    if (!out) {
        throw Error(Errc::io_error, "short write to '" + path + "'");
    }
}

}  // namespace hazardrate::csv
