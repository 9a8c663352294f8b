#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpent {

/// Table with a metadata block. On disk:
///
///   # key: value        (zero or more)
///   col_a,col_b,...     (header row)
///   1.5,gaussian:sigma=1
///
/// Fields holding a comma, quote or newline are quoted with doubled quotes.
/// Numbers are written in shortest round-trip form.
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Index of a column; throws std::invalid_argument naming it if absent.
    std::size_t column(std::string_view name) const;
    void require_columns(const std::vector<std::string>& names) const;
    double number(std::size_t row, std::string_view name) const;
    const std::string* meta(std::string_view key) const;
    void add_row(std::vector<std::string> row);
};

std::string to_csv(const CsvTable& table);

/// Throws std::invalid_argument on empty input, a missing header row or
/// rows whose field count differs from the header.
CsvTable parse_csv(std::string_view text);

/// Writes to a temporary file next to `path` and renames it into place, so
/// readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Writes to stdout when path is empty or "-", otherwise atomically.
void write_output(const std::string& path, std::string_view content);

}  // namespace fpent
