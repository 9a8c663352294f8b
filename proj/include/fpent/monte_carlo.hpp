#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fpent/distributions.hpp"
#include "fpent/format.hpp"
#include "fpent/multivariate.hpp"

namespace fpent {

struct McConfig {
    std::uint64_t sample_count = 1'000'000;
    std::uint64_t seed = 0;
    bool bias_correction = false;  // Miller-Madow
};

struct McResult {
    double estimate = 0.0;   // bits
    double std_error = 0.0;  // bits, delta method
    std::uint64_t samples = 0;
    std::uint64_t occupied_bins = 0;
    bool bias_corrected = false;
};

/// Samples are drawn in fixed chunks of this size; chunk c is generated by
/// an mt19937_64 seeded from (seed, c), so any thread count gives the same
/// counts.
inline constexpr std::uint64_t mc_chunk_size = 65536;

/// Plug-in entropy of (key, count) pairs with total n. Keys must be sorted
/// for a reproducible sum.
McResult plugin_entropy(std::span<const std::pair<std::uint64_t, std::uint64_t>> counts, bool bias_correction);

McResult mc_entropy(const Distribution& dist, const FpFormat& fmt, const McConfig& cfg);

/// Same for the quantizer given by strictly increasing values (midpoint
/// edges, clipping at both ends). A single value gives 0.
McResult mc_entropy(const Distribution& dist, std::span<const double> values, const McConfig& cfg);

/// Joint entropy of the component-wise quantized vector. Needs
/// dimension * (E + p) <= 64 so a joint bin fits one 64-bit key.
McResult mc_entropy(const MultivariateGaussian& dist, const FpFormat& fmt, const McConfig& cfg);

}  // namespace fpent
