#include "fpent/csv.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>
#include <system_error>

#include "fpent/numfmt.hpp"

namespace fpent {
namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Splits one record starting at `pos`; advances pos past its line end.
std::vector<std::string> read_record(std::string_view text, std::size_t& pos) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    cur += '"';
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c == '\n') {
            ++pos;
            break;
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

std::size_t next_line(std::string_view text, std::size_t pos) {
    const auto nl = text.find('\n', pos);
    return nl == std::string_view::npos ? text.size() : nl + 1;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::invalid_argument("csv: missing column '" + std::string(name) + "'");
}

void CsvTable::require_columns(const std::vector<std::string>& names) const {
    for (const auto& n : names) column(n);
}

double CsvTable::number(std::size_t row, std::string_view name) const {
    return parse_double(rows.at(row).at(column(name)));
}

const std::string* CsvTable::meta(std::string_view key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return &v;
    return nullptr;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("csv: row has " + std::to_string(row.size()) + " fields, header has " +
                                    std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::string to_csv(const CsvTable& t) {
    std::string out;
    for (const auto& [k, v] : t.metadata) out += "# " + k + ": " + v + "\n";
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += quote(fields[i]);
        }
        out += '\n';
    };
    line(t.columns);
    for (const auto& r : t.rows) line(r);
    return out;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable t;
    std::size_t pos = 0;
    while (pos < text.size() && text[pos] == '#') {
        const std::size_t end = next_line(text, pos);
        std::string_view line = text.substr(pos + 1, end - pos - 1);
        while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
        if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            t.metadata.emplace_back(std::string(line), "");
        } else {
            std::string_view v = line.substr(colon + 1);
            if (!v.empty() && v.front() == ' ') v.remove_prefix(1);
            t.metadata.emplace_back(std::string(line.substr(0, colon)), std::string(v));
        }
        pos = end;
    }
    if (pos >= text.size()) throw std::invalid_argument("csv: no header row");
    t.columns = read_record(text, pos);
    while (pos < text.size()) {
        if (text[pos] == '\n' || (text[pos] == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n')) {
            pos = next_line(text, pos);
            continue;  // blank line
        }
        const std::size_t line_no = t.rows.size() + 1;
        auto r = read_record(text, pos);
        if (r.size() != t.columns.size())
            throw std::invalid_argument("csv: data row " + std::to_string(line_no) + " has " +
                                        std::to_string(r.size()) + " fields, header has " +
                                        std::to_string(t.columns.size()));
        t.rows.push_back(std::move(r));
    }
    return t;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::random_device rd;
    const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::invalid_argument("cannot write '" + path.string() + "'");
        f.write(content.data(), std::streamsize(content.size()));
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::invalid_argument("cannot replace '" + path.string() + "': " + ec.message());
    }
}

void write_output(const std::string& path, std::string_view content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    write_file_atomic(path, content);
}

}  // namespace fpent
