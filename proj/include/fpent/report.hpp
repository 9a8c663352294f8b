#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "fpent/bounds.hpp"
#include "fpent/csv.hpp"
#include "fpent/entropy.hpp"
#include "fpent/monte_carlo.hpp"
#include "fpent/multivariate.hpp"

namespace fpent {

/// One row per representable value: index, value, sign, exponent,
/// mantissa_index, lower, upper, width, smooth_width (at the value), kind.
CsvTable grid_table(const FpFormat& fmt);

// JSON documents for the CLI. Non-finite numbers are written as the strings
// "inf", "-inf" and "nan".
nlohmann::json format_json(const FpFormat& fmt);
nlohmann::json to_json(const EntropyReport& r);
nlohmann::json to_json(const KlBoundReport& r);
nlohmann::json to_json(const SmoothingErrorReport& r);
nlohmann::json to_json(const McResult& r);

/// Full bounds document: D and its bounds, the exact identity check and the
/// smoothing-error bound.
nlohmann::json bounds_json(const Distribution& dist, const FpFormat& fmt, std::span<const double> t_grid,
                           bool per_bin);

/// Smooth approximation for a zero-mean multivariate Gaussian; the exact
/// joint entropy is included when the covariance is diagonal.
nlohmann::json mvg_entropy_json(const MultivariateGaussian& g, const FpFormat& fmt);

}  // namespace fpent
