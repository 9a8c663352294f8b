#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fpent/csv.hpp"

namespace fpent {

/// Panels a plotting front end draws from the CLI's CSV output:
///   scale      sweep --mode scale
///   precision  sweep --mode precision
///   multidist  sweep with several --dist
///   binsize    grid
enum class Panel { scale, precision, multidist, binsize };

Panel parse_panel(std::string_view text);
const char* to_string(Panel p) noexcept;
std::vector<std::string> panel_columns(Panel p);

/// Throws std::invalid_argument when the table has no data rows, lacks a
/// required column (named in the message) or holds a non-numeric value in a
/// numeric column.
void check_panel_schema(const CsvTable& table, Panel p);

}  // namespace fpent
