#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpent/distributions.hpp"
#include "fpent/format.hpp"

namespace fpent {

/// Probability of each bin of the grid. Mass beyond +-G is clipped into the
/// outermost bins, so the result sums to one.
std::vector<double> bin_probabilities(const Distribution& dist, const RepresentableGrid& grid);

/// Entropy in bits of the distribution quantized to the grid by
/// round-to-nearest with overflow clipping. Bins with probability below
/// 1e-300 contribute nothing.
double exact_entropy(const Distribution& dist, const RepresentableGrid& grid);

/// Same for an arbitrary quantizer given by strictly increasing
/// representable values, with midpoint bin edges and clipping at both ends.
double exact_entropy(const Distribution& dist, std::span<const double> values);

/// Joint entropy of independent components quantized component-wise: the sum
/// of the marginal entropies.
double exact_entropy_independent(std::span<const Distribution> components,
                                 const RepresentableGrid& grid);

double underflow_probability(const Distribution& dist, const FpFormat& fmt);
double overflow_probability(const Distribution& dist, const FpFormat& fmt);

/// E[log2 Delta(X)] for the exact bin-size function, with overflow samples
/// assigned the width of the outermost bin.
double expected_log_bin_size(const Distribution& dist, const FpFormat& fmt);

/// E[log2 Delta_s(X)] = E[log2 |X|] - 1/2 - (p - 1).
double expected_log_smooth_bin_size(const Distribution& dist, int precision);

/// h(X) - E[log2 Delta(X)].
double approx_entropy_tilde(const Distribution& dist, const FpFormat& fmt);

/// (p - 1/2) + h(X) - E[log2 |X|]; depends only on the precision.
double approx_entropy_smooth(const Distribution& dist, int precision);

/// Per-family closed form of the smooth approximation, written out in terms
/// of the family parameters.
double closed_form_approx_entropy(const Distribution& dist, int precision);

struct EntropyComponents {
    double h_X = 0.0;
    double E_log_delta = 0.0;
    double E_log_delta_s = 0.0;
    double E_log_abs_X = 0.0;
};

struct EntropyReport {
    std::string distribution;
    FpFormat format{1, 1};
    double exact_H = 0.0;
    double approx_H_tilde = 0.0;
    double approx_H_s = 0.0;
    double closed_form_H_s = 0.0;
    double p_overflow = 0.0;
    double p_underflow = 0.0;
    EntropyComponents components;
};

EntropyReport entropy_report(const Distribution& dist, const FpFormat& fmt);

}  // namespace fpent
