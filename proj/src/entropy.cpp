#include "fpent/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fpent/parallel.hpp"
#include "fpent/special.hpp"

namespace fpent {

using special::euler_gamma;
using special::ln2;
using special::log2e;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double negligible_mass = 1e-300;
constexpr std::size_t chunk_size = 4096;

// Masses of bins [begin, end), where bin j spans [edge(j), edge(j + 1)).
// Each edge's cdf and sf are evaluated once; the difference is taken on
// whichever side of the median keeps it free of cancellation.
template <class Edge>
void chunk_masses(const Distribution& d, const Edge& edge, std::size_t begin, std::size_t end,
                  std::vector<double>& out) {
    out.resize(end - begin);
    double x0 = edge(begin);
    double c0 = d.cdf(x0);
    double s0 = d.sf(x0);
    for (std::size_t j = begin; j < end; ++j) {
        const double x1 = edge(j + 1);
        const double c1 = d.cdf(x1);
        const double s1 = d.sf(x1);
        out[j - begin] = std::max(0.0, c0 <= 0.5 ? c1 - c0 : s0 - s1);
        c0 = c1;
        s0 = s1;
    }
}

template <class Edge>
double entropy_from_edges(const Distribution& d, const Edge& edge, std::size_t k) {
    const std::size_t n_chunks = (k + chunk_size - 1) / chunk_size;
    std::vector<double> partial(n_chunks, 0.0);
    for_each_chunk(n_chunks, [&](std::size_t c) {
        std::vector<double> masses;
        const std::size_t begin = c * chunk_size;
        chunk_masses(d, edge, begin, std::min(k, begin + chunk_size), masses);
        CompensatedSum s;
        for (double p : masses)
            if (p >= negligible_mass) s.add(-p * std::log2(p));
        partial[c] = s.value();
    });
    CompensatedSum total;
    for (double v : partial) total.add(v);
    return total.value();
}

auto grid_edges(const RepresentableGrid& grid) {
    const std::uint64_t k = grid.size();
    return [&grid, k](std::size_t j) {
        if (j == 0) return -inf;
        if (j >= k) return inf;
        return grid.lower(j);
    };
}

}  // namespace

std::vector<double> bin_probabilities(const Distribution& dist, const RepresentableGrid& grid) {
    const std::size_t k = grid.size();
    std::vector<double> out(k);
    const auto edge = grid_edges(grid);
    const std::size_t n_chunks = (k + chunk_size - 1) / chunk_size;
    for_each_chunk(n_chunks, [&](std::size_t c) {
        std::vector<double> masses;
        const std::size_t begin = c * chunk_size;
        chunk_masses(dist, edge, begin, std::min(k, begin + chunk_size), masses);
        std::copy(masses.begin(), masses.end(), out.begin() + static_cast<std::ptrdiff_t>(begin));
    });
    return out;
}

double exact_entropy(const Distribution& dist, const RepresentableGrid& grid) {
    return entropy_from_edges(dist, grid_edges(grid), grid.size());
}

double exact_entropy(const Distribution& dist, std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("quantizer needs at least one value");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw std::invalid_argument("quantizer values must be finite");
        if (i && !(values[i - 1] < values[i]))
            throw std::invalid_argument("quantizer values must be strictly increasing");
    }
    if (values.size() == 1) return 0.0;
    const std::size_t k = values.size();
    const auto edge = [values, k](std::size_t j) {
        if (j == 0) return -inf;
        if (j >= k) return inf;
        return 0.5 * values[j - 1] + 0.5 * values[j];
    };
    return entropy_from_edges(dist, edge, k);
}

double exact_entropy_independent(std::span<const Distribution> components,
                                 const RepresentableGrid& grid) {
    double total = 0.0;
    for (const auto& d : components) total += exact_entropy(d, grid);
    return total;
}

double underflow_probability(const Distribution& dist, const FpFormat& fmt) {
    const double u = fmt.underflow_bound();
    return dist.prob(-u, u);
}

double overflow_probability(const Distribution& dist, const FpFormat& fmt) {
    const double g = fmt.granular_bound();
    return dist.cdf(-g) + dist.sf(g);
}

double expected_log_bin_size(const Distribution& dist, const FpFormat& fmt) {
    const auto segments = positive_width_segments(fmt);
    CompensatedSum s;
    for (const auto& seg : segments) {
        const double mass = dist.prob(seg.lower, seg.upper) + dist.prob(-seg.upper, -seg.lower);
        if (mass > 0.0) s.add(mass * std::log2(seg.width));
    }
    const double p_over = overflow_probability(dist, fmt);
    if (p_over > 0.0) s.add(p_over * std::log2(segments.back().width));
    return s.value();
}

double expected_log_smooth_bin_size(const Distribution& dist, int precision) {
    return dist.expected_log2_abs() - 0.5 + (1.0 - precision);
}

double approx_entropy_tilde(const Distribution& dist, const FpFormat& fmt) {
    return dist.differential_entropy() - expected_log_bin_size(dist, fmt);
}

double approx_entropy_smooth(const Distribution& dist, int precision) {
    return (precision - 0.5) + dist.differential_entropy() - dist.expected_log2_abs();
}

double closed_form_approx_entropy(const Distribution& dist, int precision) {
    using special::digamma;
    using special::log_beta;
    using special::log_gamma;
    using special::pi;
    const double p = precision;
    const double e = std::exp(1.0);
    switch (dist.family()) {
        case Family::gaussian: return p + 0.5 * std::log2(2.0 * pi * e) + euler_gamma / (2.0 * ln2);
        case Family::uniform: {
            const double a = dist.param("a");
            const double b = dist.param("b");
            auto xl = [](double x) { return x == 0.0 ? 0.0 : x * std::log2(std::fabs(x)); };
            return p - 1.0 + std::log2(std::sqrt(2.0) * e * (b - a)) + (xl(a) - xl(b)) / (b - a);
        }
        case Family::gamma:
        case Family::chi2: {
            const double a = dist.family() == Family::gamma ? dist.param("alpha") : 0.5 * dist.param("k");
            return p - 0.5 + a * log2e * (1.0 - digamma(a)) + log_gamma(a) * log2e;
        }
        case Family::laplace: return p + 0.5 + (1.0 + euler_gamma) / ln2;
        case Family::logistic: return p - 0.5 + (2.0 + euler_gamma - std::log(pi / 2.0)) / ln2;
        case Family::weibull: return p - 0.5 + (1.0 + euler_gamma) / ln2 - std::log2(dist.param("k"));
        case Family::lognormal:
            return p - 0.5 + std::log2(dist.param("sigma") * std::sqrt(2.0 * pi * e));
        case Family::pareto: return p - 0.5 + std::log2(e / dist.param("alpha"));
        case Family::beta: {
            const double a = dist.param("alpha");
            const double b = dist.param("beta");
            return p - 0.5 + log_beta(a, b) * log2e +
                   ((a + b - 1.0) * digamma(a + b) - a * digamma(a) - (b - 1.0) * digamma(b)) / ln2;
        }
        case Family::student_t: {
            const double nu = dist.param("nu");
            return p - 0.5 + log_beta(0.5 * nu, 0.5) * log2e +
                   (0.5 * (nu + 1.0) * digamma(0.5 * (nu + 1.0)) - 0.5 * nu * digamma(0.5 * nu) -
                    0.5 * digamma(0.5)) /
                       ln2;
        }
    }
    throw std::logic_error("closed form: unknown family");
}

EntropyReport entropy_report(const Distribution& dist, const FpFormat& fmt) {
    EntropyReport r;
    r.distribution = dist.to_string();
    r.format = fmt;
    r.exact_H = exact_entropy(dist, RepresentableGrid(fmt));
    r.components.h_X = dist.differential_entropy();
    r.components.E_log_abs_X = dist.expected_log2_abs();
    r.components.E_log_delta = expected_log_bin_size(dist, fmt);
    r.components.E_log_delta_s = expected_log_smooth_bin_size(dist, fmt.precision());
    r.approx_H_tilde = r.components.h_X - r.components.E_log_delta;
    r.approx_H_s = approx_entropy_smooth(dist, fmt.precision());
    r.closed_form_H_s = closed_form_approx_entropy(dist, fmt.precision());
    r.p_overflow = overflow_probability(dist, fmt);
    r.p_underflow = underflow_probability(dist, fmt);
    return r;
}

}  // namespace fpent
