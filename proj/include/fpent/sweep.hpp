#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fpent/csv.hpp"
#include "fpent/distributions.hpp"
#include "fpent/monte_carlo.hpp"

namespace fpent {

inline constexpr const char* tool_version = "0.1.0";

enum class SweepMode { scale, precision, exponent };
SweepMode parse_sweep_mode(std::string_view text);
const char* to_string(SweepMode m) noexcept;

struct SweepQuantities {
    bool exact = true;
    bool approx_s = true;
    bool approx_tilde = true;
    bool bounds = false;
    bool mc = false;

    /// Comma-separated subset of exact, approx_s, approx_tilde, bounds, mc.
    static SweepQuantities parse(std::string_view text);
};

struct SweepSpec {
    SweepMode mode = SweepMode::scale;
    std::vector<Distribution> dists;
    int precision = 3;      // fixed in scale and exponent modes
    int exponent_bits = 4;  // fixed in scale and precision modes
    std::size_t points = 500;
    double min = 1e-12;
    double max = 1e12;
    int p_min = 1, p_max = 8;
    int E_min = 1, E_max = 7;
    SweepQuantities quantities;
    McConfig mc;  // seed of row r is mc.seed + r
};

/// n points from lo to hi, evenly spaced in log; endpoints exact.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// Throws std::invalid_argument describing the first problem.
void validate(const SweepSpec& spec);

/// One row per (distribution, swept value), grouped by distribution in the
/// order given and increasing in the swept value. Metadata records the
/// mode, fixed format parameters, distributions, tool version and
/// `timestamp` (pass "" to omit it).
CsvTable run_sweep(const SweepSpec& spec, const std::string& timestamp);

/// Columns of the sweep CSV for the requested quantities.
std::vector<std::string> sweep_columns(const SweepQuantities& q);

}  // namespace fpent
