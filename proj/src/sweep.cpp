#include "fpent/sweep.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fpent/bounds.hpp"
#include "fpent/entropy.hpp"
#include "fpent/numfmt.hpp"
#include "fpent/parallel.hpp"

namespace fpent {

SweepMode parse_sweep_mode(std::string_view text) {
    if (text == "scale") return SweepMode::scale;
    if (text == "precision") return SweepMode::precision;
    if (text == "exponent") return SweepMode::exponent;
    throw std::invalid_argument("unknown sweep mode '" + std::string(text) + "' (scale, precision, exponent)");
}

const char* to_string(SweepMode m) noexcept {
    switch (m) {
        case SweepMode::scale: return "scale";
        case SweepMode::precision: return "precision";
        case SweepMode::exponent: return "exponent";
    }
    return "?";
}

SweepQuantities SweepQuantities::parse(std::string_view text) {
    SweepQuantities q{false, false, false, false, false};
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        const auto item = text.substr(start, end - start);
        if (item == "exact") q.exact = true;
        else if (item == "approx_s") q.approx_s = true;
        else if (item == "approx_tilde") q.approx_tilde = true;
        else if (item == "bounds") q.bounds = true;
        else if (item == "mc") q.mc = true;
        else
            throw std::invalid_argument("unknown quantity '" + std::string(item) +
                                        "' (exact, approx_s, approx_tilde, bounds, mc)");
        start = end + 1;
    }
    return q;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t k = 0; k < n; ++k) out[k] = std::exp(a + (b - a) * double(k) / double(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

void validate(const SweepSpec& s) {
    if (s.dists.empty()) throw std::invalid_argument("sweep needs at least one distribution");
    switch (s.mode) {
        case SweepMode::scale:
            if (!(s.min > 0.0) || !(s.max > 0.0) || !std::isfinite(s.min) || !std::isfinite(s.max))
                throw std::invalid_argument("scale sweep needs positive finite --min and --max");
            if (!(s.min <= s.max)) throw std::invalid_argument("scale sweep needs --min <= --max");
            if (s.points == 0) throw std::invalid_argument("scale sweep needs --points >= 1");
            if (s.points > 1 && s.min == s.max) throw std::invalid_argument("--min == --max needs --points 1");
            FpFormat(s.precision, s.exponent_bits);
            break;
        case SweepMode::precision:
            if (s.p_min > s.p_max) throw std::invalid_argument("precision sweep needs --p-min <= --p-max");
            FpFormat(s.p_min, s.exponent_bits);
            FpFormat(s.p_max, s.exponent_bits);
            break;
        case SweepMode::exponent:
            if (s.E_min > s.E_max) throw std::invalid_argument("exponent sweep needs --E-min <= --E-max");
            FpFormat(s.precision, s.E_min);
            FpFormat(s.precision, s.E_max);
            break;
    }
    if (s.quantities.bounds) {
        const int bits = s.mode == SweepMode::precision  ? s.p_max + s.exponent_bits
                         : s.mode == SweepMode::exponent ? s.precision + s.E_max
                                                         : s.precision + s.exponent_bits;
        if ((std::uint64_t{1} << bits) > max_bins_for_bounds)
            throw std::invalid_argument("bounds need formats with at most 2^16 values (E + p <= 16)");
    }
    if (s.quantities.mc && s.mc.sample_count == 0) throw std::invalid_argument("--samples must be positive");
}

std::vector<std::string> sweep_columns(const SweepQuantities& q) {
    std::vector<std::string> c = {"dist", "swept_value", "scale", "precision", "exponent_bits", "p_overflow",
                                  "p_underflow"};
    if (q.exact) c.push_back("exact_H");
    if (q.approx_s) c.push_back("approx_H_s");
    if (q.approx_tilde) c.push_back("approx_H_tilde");
    if (q.bounds) {
        for (const char* k : {"kl", "kl_lower", "kl_upper", "epsilon", "smoothing_bound"}) c.push_back(k);
    }
    if (q.mc) {
        c.push_back("mc_H");
        c.push_back("mc_std_error");
    }
    return c;
}

CsvTable run_sweep(const SweepSpec& s, const std::string& timestamp) {
    validate(s);
    struct Point {
        std::size_t base;  // index into spec.dists
        Distribution dist;
        double swept, scale;
        int p, E;
    };
    std::vector<Point> pts;
    for (std::size_t b = 0; b < s.dists.size(); ++b) {
        const auto& d = s.dists[b];
        switch (s.mode) {
            case SweepMode::scale:
                for (double a : log_spaced(s.min, s.max, s.points))
                    pts.push_back({b, d.scaled(a), a, a, s.precision, s.exponent_bits});
                break;
            case SweepMode::precision:
                for (int p = s.p_min; p <= s.p_max; ++p) pts.push_back({b, d, double(p), 1.0, p, s.exponent_bits});
                break;
            case SweepMode::exponent:
                for (int E = s.E_min; E <= s.E_max; ++E) pts.push_back({b, d, double(E), 1.0, s.precision, E});
                break;
        }
    }

    CsvTable t;
    t.metadata.emplace_back("tool", std::string("fpent ") + tool_version);
    t.metadata.emplace_back("mode", to_string(s.mode));
    if (s.mode != SweepMode::precision) t.metadata.emplace_back("precision", std::to_string(s.precision));
    if (s.mode != SweepMode::exponent) t.metadata.emplace_back("exponent_bits", std::to_string(s.exponent_bits));
    for (const auto& d : s.dists) t.metadata.emplace_back("dist", d.to_string());
    if (s.quantities.mc) {
        t.metadata.emplace_back("mc_samples", std::to_string(s.mc.sample_count));
        t.metadata.emplace_back("mc_seed", std::to_string(s.mc.seed));
        t.metadata.emplace_back("mc_bias_correction", s.mc.bias_correction ? "true" : "false");
    }
    if (!timestamp.empty()) t.metadata.emplace_back("timestamp", timestamp);
    t.columns = sweep_columns(s.quantities);

    std::vector<std::vector<std::string>> rows(pts.size());
    for_each_chunk(pts.size(), [&](std::size_t r) {
        const auto& pt = pts[r];
        const FpFormat fmt(pt.p, pt.E);
        const RepresentableGrid grid(fmt);
        std::vector<std::string> row = {s.dists[pt.base].to_string(),
                                        format_double(pt.swept),
                                        format_double(pt.scale),
                                        std::to_string(pt.p),
                                        std::to_string(pt.E),
                                        format_double(overflow_probability(pt.dist, fmt)),
                                        format_double(underflow_probability(pt.dist, fmt))};
        if (s.quantities.exact) row.push_back(format_double(exact_entropy(pt.dist, grid)));
        if (s.quantities.approx_s) row.push_back(format_double(approx_entropy_smooth(pt.dist, pt.p)));
        if (s.quantities.approx_tilde) row.push_back(format_double(approx_entropy_tilde(pt.dist, fmt)));
        if (s.quantities.bounds) {
            const auto rep = kl_bound_report(pt.dist, grid, default_t_grid());
            const auto eps = smoothing_epsilon(pt.dist, fmt);
            for (double v : {rep.kl, rep.lower, rep.upper, eps.epsilon, eps.bound}) row.push_back(format_double(v));
        }
        if (s.quantities.mc) {
            McConfig cfg = s.mc;
            cfg.seed = s.mc.seed + r;
            const auto m = mc_entropy(pt.dist, fmt, cfg);
            row.push_back(format_double(m.estimate));
            row.push_back(format_double(m.std_error));
        }
        rows[r] = std::move(row);
    });
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

}  // namespace fpent
