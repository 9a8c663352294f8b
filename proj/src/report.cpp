#include "fpent/report.hpp"

#include <cmath>

#include "fpent/numfmt.hpp"

namespace fpent {
namespace {

using nlohmann::json;

// JSON has no literal for infinities or NaN; they are written as the
// strings "inf", "-inf" and "nan".
json num(double x) { return std::isfinite(x) ? json(x) : json(format_double(x)); }

}  // namespace

CsvTable grid_table(const FpFormat& fmt) {
    RepresentableGrid grid(fmt);
    CsvTable t;
    t.metadata.emplace_back("format", fmt.to_string());
    t.metadata.emplace_back("e_min", std::to_string(fmt.e_min()));
    t.metadata.emplace_back("e_max", std::to_string(fmt.e_max()));
    t.metadata.emplace_back("granular_bound", format_double(fmt.granular_bound()));
    t.columns = {"index", "value", "sign", "exponent", "mantissa_index", "lower",
                 "upper", "width", "smooth_width", "kind"};
    t.rows.reserve(grid.size());
    for (std::uint64_t i = 0; i < grid.size(); ++i) {
        const auto v = grid.at(i);
        const double x = v.value();
        t.rows.push_back({std::to_string(i), format_double(x), std::to_string(v.sign), std::to_string(v.exponent),
                          std::to_string(v.mantissa_index), format_double(grid.lower(i)),
                          format_double(grid.upper(i)), format_double(grid.width(i)),
                          format_double(smooth_bin_size(x, fmt)), to_string(grid.kind(i))});
    }
    return t;
}

json format_json(const FpFormat& f) {
    return {{"precision", f.precision()},
            {"exponent_bits", f.exponent_bits()},
            {"e_min", f.e_min()},
            {"e_max", f.e_max()},
            {"size", f.size()},
            {"granular_bound", f.granular_bound()},
            {"underflow_bound", f.underflow_bound()}};
}

json to_json(const EntropyReport& r) {
    return {{"distribution", r.distribution},
            {"format", format_json(r.format)},
            {"exact_H", num(r.exact_H)},
            {"approx_H_tilde", num(r.approx_H_tilde)},
            {"approx_H_s", num(r.approx_H_s)},
            {"closed_form_H_s", num(r.closed_form_H_s)},
            {"p_overflow", num(r.p_overflow)},
            {"p_underflow", num(r.p_underflow)},
            {"components",
             {{"h_X", num(r.components.h_X)},
              {"E_log_delta", num(r.components.E_log_delta)},
              {"E_log_delta_s", num(r.components.E_log_delta_s)},
              {"E_log_abs_X", num(r.components.E_log_abs_X)}}}};
}

json to_json(const KlBoundReport& r) {
    json j = {{"kl", num(r.kl)},
              {"lower", num(r.lower)},
              {"upper", num(r.upper)},
              {"t_star", num(r.t_star)},
              {"one_peak", num(r.one_peak)},
              {"unbounded_density", r.unbounded_density}};
    if (!r.per_bin.empty()) {
        json bins = json::array();
        for (const auto& b : r.per_bin)
            bins.push_back({{"index", b.index},
                            {"lower", num(b.lower)},
                            {"upper", num(b.upper)},
                            {"p", num(b.p)},
                            {"q", num(b.q)},
                            {"Lambda", num(b.Lambda)},
                            {"kl", num(b.kl)},
                            {"upper_bound", num(b.upper_bound)},
                            {"remainder", num(b.remainder)}});
        j["per_bin"] = std::move(bins);
    }
    return j;
}

json to_json(const SmoothingErrorReport& r) {
    return {{"dimension", r.dimension},
            {"epsilon", num(r.epsilon)},
            {"epsilon_ratio", num(r.epsilon_ratio)},
            {"bound", num(r.bound)},
            {"observed_gap", num(r.observed_gap)},
            {"holds", r.observed_gap <= r.bound},
            {"approx_H_tilde", num(r.approx_H_tilde)},
            {"approx_H_s", num(r.approx_H_s)}};
}

json to_json(const McResult& r) {
    return {{"estimate", num(r.estimate)},
            {"std_error", num(r.std_error)},
            {"samples", r.samples},
            {"occupied_bins", r.occupied_bins},
            {"bias_corrected", r.bias_corrected}};
}

json bounds_json(const Distribution& dist, const FpFormat& fmt, std::span<const double> t_grid, bool per_bin) {
    RepresentableGrid grid(fmt);
    const auto rep = kl_bound_report(dist, grid, t_grid, per_bin);
    const double exact = exact_entropy(dist, grid);
    const double h = dist.differential_entropy();
    const double elog = expected_log_bin_size(dist, fmt);
    json j = {{"distribution", dist.to_string()}, {"format", format_json(fmt)}};
    j["kl"] = to_json(rep);
    j["identity"] = {{"exact_H", num(exact)},
                     {"h_X", num(h)},
                     {"E_log_delta", num(elog)},
                     {"closure_error", num(std::fabs(exact - (h - elog + rep.kl)))}};
    j["smoothing"] = to_json(smoothing_epsilon(dist, fmt));
    return j;
}

json mvg_entropy_json(const MultivariateGaussian& g, const FpFormat& fmt) {
    json j = {{"distribution", g.to_string()},
              {"format", format_json(fmt)},
              {"dimension", g.dimension()},
              {"h_X", num(g.differential_entropy())},
              {"approx_H_s", num(mvg_approx_entropy_eigen(g, fmt.precision()))},
              {"approx_H_s_det", num(mvg_approx_entropy_det(g, fmt.precision()))}};
    if (g.is_diagonal()) {
        std::vector<Distribution> comps;
        for (std::size_t i = 0; i < g.dimension(); ++i) comps.push_back(g.marginal(i));
        j["exact_H"] = num(exact_entropy_independent(comps, RepresentableGrid(fmt)));
    } else {
        j["exact_H"] = nullptr;  // correlated: only the Monte-Carlo route applies
    }
    return j;
}

}  // namespace fpent
