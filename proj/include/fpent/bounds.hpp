#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpent/distributions.hpp"
#include "fpent/format.hpp"

namespace fpent {

/// Per-bin machinery is limited to formats with at most this many values;
/// beyond that, D(f||g) is available from exact_H - approx_H_tilde.
inline constexpr std::uint64_t max_bins_for_bounds = std::uint64_t{1} << 16;

/// Reference density g is piecewise uniform: g_i = p_i / |B_i| on each
/// quantization cell, where p_i includes clipped overflow mass. The two
/// outermost cells therefore extend to +-infinity. For the bound machinery
/// those cells are split into the nominal bin [a_i, b_i] (reference
/// q_i / |B_i| with q_i the in-bin mass) plus an exactly integrated
/// overflow remainder r_i that enters both bounds unchanged.
struct BinBoundTerm {
    std::uint64_t index = 0;
    double lower = 0.0;
    double upper = 0.0;
    double p = 0.0;          // clipped bin probability
    double q = 0.0;          // mass inside the nominal bin
    double Lambda = 0.0;     // sup f / (q / |B|) over the nominal bin; inf if unbounded
    double kl = 0.0;         // contribution to D(f||g)
    double upper_bound = 0.0;
    double remainder = 0.0;  // overflow part shared by both bounds
};

struct KlBoundReport {
    double kl = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double t_star = 1.0;
    /// One-peak height-width bound; NaN when the distribution is not unimodal.
    double one_peak = 0.0;
    bool unbounded_density = false;
    std::vector<BinBoundTerm> per_bin;
};

/// 60 log-spaced points in [1, 32].
std::vector<double> default_t_grid();

/// D(f||g) in bits by per-bin adaptive quadrature. Throws NumericalError
/// naming the bin when a bin integral fails to converge.
double kl_divergence(const Distribution& dist, const RepresentableGrid& grid);

/// Upper bound: integral of f log2(f/g_i) over {f >= g_i} in each bin.
double kl_upper_bound(const Distribution& dist, const RepresentableGrid& grid);

struct LowerBound {
    double value = 0.0;
    double t_star = 1.0;
};

/// max over t of sum_i p_i [t log2 t - (t-1) log2 e] L_i(t).
LowerBound kl_lower_bound(const Distribution& dist, const RepresentableGrid& grid,
                          std::span<const double> t_grid);

/// Sum of w_i H_i log2(H_i |B_i| / p_i). Rejects non-unimodal densities with
/// std::invalid_argument.
double one_peak_bound(const Distribution& dist, const RepresentableGrid& grid);

/// L_i(lambda): fraction of the nominal bin where f >= lambda q_i / |B_i|.
double superlevel_fraction(const Distribution& dist, const RepresentableGrid& grid, std::uint64_t i,
                           double lambda);

KlBoundReport kl_bound_report(const Distribution& dist, const RepresentableGrid& grid,
                              std::span<const double> t_grid, bool keep_per_bin = false);

struct SmoothingErrorReport {
    int dimension = 1;
    /// |integral over underflow and overflow regions of f log2(f Delta_s)|
    double epsilon = 0.0;
    /// |integral over the same regions of f log2(Delta_s / Delta)|, the part
    /// of the gap the two bin-size functions actually differ by there.
    double epsilon_ratio = 0.0;
    double bound = 0.0;  // dimension / 2 + epsilon
    double observed_gap = 0.0;
    double approx_H_tilde = 0.0;
    double approx_H_s = 0.0;
};

SmoothingErrorReport smoothing_epsilon(const Distribution& dist, const FpFormat& fmt);

}  // namespace fpent
