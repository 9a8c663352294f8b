#include "fpent/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fpent/entropy.hpp"
#include "fpent/errors.hpp"
#include "fpent/numfmt.hpp"
#include "fpent/parallel.hpp"
#include "fpent/quadrature.hpp"
#include "fpent/special.hpp"

namespace fpent {
namespace {

constexpr const char* component = "error_analysis";
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double negligible_mass = 1e-300;
constexpr std::size_t bins_per_task = 64;

double phi(double t) { return t * std::log2(t) - (t - 1.0) * special::log2e; }

struct Interval {
    double lo, hi;
};

// Shared per-call state: the distribution, the grid and the sorted point
// sets used for splitting integrals and root brackets.
class BinAnalyzer {
public:
    BinAnalyzer(const Distribution& d, const RepresentableGrid& g)
        : dist_(d), grid_(g), quad_pts_(d.quadrature_breakpoints()), mono_pts_(d.monotone_breakpoints()) {
        if (grid_.size() > max_bins_for_bounds) {
            std::ostringstream os;
            os << "per-bin bounds need at most " << max_bins_for_bounds << " values, format "
               << grid_.format().to_string() << " has " << grid_.size();
            throw std::invalid_argument(os.str());
        }
    }

    std::uint64_t size() const { return grid_.size(); }

    // Breakpoints of `pts` strictly inside (a, b), bracketed by a and b.
    static std::vector<double> split(const std::vector<double>& pts, double a, double b) {
        std::vector<double> out{a};
        for (auto it = std::upper_bound(pts.begin(), pts.end(), a); it != pts.end() && *it < b; ++it)
            out.push_back(*it);
        out.push_back(b);
        return out;
    }

    QuadOptions options(double mass) const {
        QuadOptions opt;
        opt.abs_tol = 1e-15 + 1e-12 * mass;
        opt.rel_tol = 1e-10;
        return opt;
    }

    double integrate(const Integrand& f, double a, double b, double mass, std::uint64_t bin,
                     const char* what) const {
        if (!(a < b)) return 0.0;
        const auto pts = split(quad_pts_, a, b);
        const auto r = integrate_pieces(f, pts, options(mass));
        if (!r.converged) {
            std::ostringstream os;
            os << what << " in bin " << bin << " [" << format_double(a) << ", " << format_double(b)
               << "] did not converge (estimated error " << format_double(r.abs_error) << ")";
            throw NumericalError(component, os.str());
        }
        return r.value;
    }

    // integral of f log2(f / g) over [a, b]
    double relative_entropy_part(double a, double b, double g, double mass, std::uint64_t bin,
                                 const char* what) const {
        return integrate(
            [&](double x) {
                const double f = dist_.pdf(x);
                return f > 0.0 ? f * std::log2(f / g) : 0.0;
            },
            a, b, mass, bin, what);
    }

    // Point where the monotone density crosses thr inside [lo, hi]; f(lo)
    // and f(hi) lie on opposite sides. Bisection rather than a faster
    // bracketing solver because the density may be infinite at an end.
    double crossing(double lo, double hi, double thr, bool decreasing) const {
        const double tol = 1e-14 * (hi - lo);
        for (int it = 0; it < 200 && hi - lo > tol; ++it) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi) break;
            const bool above = dist_.pdf(mid) >= thr;
            if (above == decreasing)
                lo = mid;
            else
                hi = mid;
        }
        return lo + 0.5 * (hi - lo);
    }

    // {x in [a, b] : f(x) >= thr} as a union of intervals.
    std::vector<Interval> superlevel(double a, double b, double thr) const {
        const auto cuts = split(mono_pts_, a, b);
        std::vector<Interval> out;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double l = cuts[k], r = cuts[k + 1];
            const bool al = dist_.pdf(l) >= thr, ar = dist_.pdf(r) >= thr;
            Interval piece{l, r};
            if (!al && !ar) continue;
            if (al && !ar) piece.hi = crossing(l, r, thr, true);
            if (!al && ar) piece.lo = crossing(l, r, thr, false);
            if (!out.empty() && out.back().hi == piece.lo)
                out.back().hi = piece.hi;
            else
                out.push_back(piece);
        }
        return out;
    }

    static double measure(const std::vector<Interval>& s) {
        double m = 0.0;
        for (const auto& iv : s) m += iv.hi - iv.lo;
        return m;
    }

    // Largest density value over [a, b]: the maximum sits at a piece end.
    double peak(double a, double b) const {
        double h = 0.0;
        for (double x : split(mono_pts_, a, b)) h = std::max(h, dist_.pdf(x));
        return h;
    }

    struct Options {
        std::span<const double> t_grid;
        bool upper = false;
        bool one_peak = false;
    };

    struct Result {
        BinBoundTerm term;
        double one_peak = 0.0;
        std::vector<double> lower_terms;  // q phi(t) L(t) per t
    };

    Result analyze(std::uint64_t i, const Options& o) const {
        Result res;
        auto& t = res.term;
        const std::uint64_t K = grid_.size();
        const double a = grid_.lower(i), b = grid_.upper(i), w = b - a;
        t.index = i;
        t.lower = a;
        t.upper = b;
        t.q = dist_.prob(a, b);
        double tail_mass = 0.0;
        if (i == 0) tail_mass += dist_.cdf(a);
        if (i + 1 == K) tail_mass += dist_.sf(b);
        t.p = t.q + tail_mass;
        res.lower_terms.assign(o.t_grid.size(), 0.0);
        if (t.p < negligible_mass) return res;

        const double g = t.p / w;
        const bool outer = i == 0 || i + 1 == K;
        double tail_kl = 0.0;
        if (outer) {
            if (i == 0) tail_kl += relative_entropy_part(-inf, a, g, tail_mass, i, "overflow integral");
            if (i + 1 == K) tail_kl += relative_entropy_part(b, inf, g, tail_mass, i, "overflow integral");
        }
        t.kl = relative_entropy_part(a, b, g, t.q, i, "relative entropy") + tail_kl;
        if (outer) t.remainder = (t.q > 0.0 ? t.q * std::log2(t.q / t.p) : 0.0) + tail_kl;
        if (t.q <= 0.0) {
            t.upper_bound = t.remainder;
            res.one_peak = t.remainder;
            return res;
        }

        const double gq = t.q / w;
        const double h = peak(a, b);
        t.Lambda = h / gq;
        for (std::size_t k = 0; k < o.t_grid.size(); ++k) {
            const double tk = o.t_grid[k];
            if (tk == 1.0) continue;
            const double L = measure(superlevel(a, b, tk * gq)) / w;
            res.lower_terms[k] = t.q * phi(tk) * L;
        }
        if (o.upper || o.one_peak) {
            const auto s1 = superlevel(a, b, gq);
            if (o.upper) {
                double u = 0.0;
                for (const auto& iv : s1) u += relative_entropy_part(iv.lo, iv.hi, gq, t.q, i, "upper bound");
                t.upper_bound = u + t.remainder;
            }
            if (o.one_peak) {
                const double width = measure(s1);
                res.one_peak = (width > 0.0 ? width * h * std::log2(h / gq) : 0.0) + t.remainder;
            }
        }
        return res;
    }

    // Every bin analyzed in parallel; results returned in bin order.
    std::vector<Result> analyze_all(const Options& o) const {
        const std::size_t n = grid_.size();
        std::vector<Result> out(n);
        for_each_chunk((n + bins_per_task - 1) / bins_per_task, [&](std::size_t c) {
            const std::size_t end = std::min(n, (c + 1) * bins_per_task);
            for (std::size_t i = c * bins_per_task; i < end; ++i) out[i] = analyze(i, o);
        });
        return out;
    }

private:
    const Distribution& dist_;
    const RepresentableGrid& grid_;
    std::vector<double> quad_pts_;
    std::vector<double> mono_pts_;
};

void check_t_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("t grid must not be empty");
    for (double t : t_grid)
        if (!(t >= 1.0) || !std::isfinite(t))
            throw std::invalid_argument("t grid values must be finite and at least 1");
}

LowerBound best_lower(const std::vector<BinAnalyzer::Result>& rs, std::span<const double> t_grid) {
    CompensatedSum rem;
    for (const auto& r : rs) rem.add(r.term.remainder);
    LowerBound best{-inf, 1.0};
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        CompensatedSum s;
        for (const auto& r : rs) s.add(r.lower_terms[k]);
        const double v = s.value() + rem.value();
        if (v > best.value) best = {v, t_grid[k]};
    }
    return best;
}

}  // namespace

std::vector<double> default_t_grid() {
    std::vector<double> t(60);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::pow(32.0, double(k) / double(t.size() - 1));
    t.front() = 1.0;
    t.back() = 32.0;
    return t;
}

double kl_divergence(const Distribution& dist, const RepresentableGrid& grid) {
    BinAnalyzer an(dist, grid);
    CompensatedSum s;
    for (const auto& r : an.analyze_all({})) s.add(r.term.kl);
    return s.value();
}

double kl_upper_bound(const Distribution& dist, const RepresentableGrid& grid) {
    BinAnalyzer an(dist, grid);
    CompensatedSum s;
    for (const auto& r : an.analyze_all({.t_grid = {}, .upper = true})) s.add(r.term.upper_bound);
    return s.value();
}

LowerBound kl_lower_bound(const Distribution& dist, const RepresentableGrid& grid,
                          std::span<const double> t_grid) {
    check_t_grid(t_grid);
    BinAnalyzer an(dist, grid);
    return best_lower(an.analyze_all({.t_grid = t_grid}), t_grid);
}

double one_peak_bound(const Distribution& dist, const RepresentableGrid& grid) {
    if (!dist.unimodal())
        throw std::invalid_argument("one-peak bound needs a unimodal density, " + dist.to_string() +
                                    " is not");
    BinAnalyzer an(dist, grid);
    CompensatedSum s;
    for (const auto& r : an.analyze_all({.t_grid = {}, .upper = false, .one_peak = true})) s.add(r.one_peak);
    return s.value();
}

double superlevel_fraction(const Distribution& dist, const RepresentableGrid& grid, std::uint64_t i,
                           double lambda) {
    if (i >= grid.size()) throw std::out_of_range("bin index out of range");
    BinAnalyzer an(dist, grid);
    const double a = grid.lower(i), b = grid.upper(i);
    const double q = dist.prob(a, b);
    if (q <= 0.0) return 0.0;
    return BinAnalyzer::measure(an.superlevel(a, b, lambda * q / (b - a))) / (b - a);
}

KlBoundReport kl_bound_report(const Distribution& dist, const RepresentableGrid& grid,
                              std::span<const double> t_grid, bool keep_per_bin) {
    check_t_grid(t_grid);
    BinAnalyzer an(dist, grid);
    const bool unimodal = dist.unimodal();
    const auto rs = an.analyze_all({.t_grid = t_grid, .upper = true, .one_peak = unimodal});

    KlBoundReport rep;
    CompensatedSum kl, up, peak;
    for (const auto& r : rs) {
        kl.add(r.term.kl);
        up.add(r.term.upper_bound);
        peak.add(r.one_peak);
        if (std::isinf(r.term.Lambda)) rep.unbounded_density = true;
    }
    rep.kl = kl.value();
    rep.upper = up.value();
    rep.one_peak = unimodal ? peak.value() : std::numeric_limits<double>::quiet_NaN();
    const auto lb = best_lower(rs, t_grid);
    rep.lower = lb.value;
    rep.t_star = lb.t_star;
    if (keep_per_bin) {
        rep.per_bin.reserve(rs.size());
        for (const auto& r : rs)
            if (r.term.p > 0.0) rep.per_bin.push_back(r.term);
    }
    return rep;
}

SmoothingErrorReport smoothing_epsilon(const Distribution& dist, const FpFormat& fmt) {
    const double u = fmt.underflow_bound(), G = fmt.granular_bound();
    const double log2_offset = 0.5 - (1.0 - fmt.precision());  // log2|x| - log2 Delta_s
    RepresentableGrid grid(fmt);
    const double central = grid.width(grid.size() / 2);
    const double clipping = grid.width(grid.size() - 1);

    const auto pts = dist.quadrature_breakpoints();
    QuadOptions opt;
    opt.abs_tol = 1e-15;
    opt.rel_tol = 1e-10;
    auto over = [&](const Integrand& f, double a, double b) {
        if (!(a < b)) return 0.0;
        const auto cuts = BinAnalyzer::split(pts, a, b);
        const auto r = integrate_pieces(f, cuts, opt);
        if (!r.converged)
            throw NumericalError(component, "smoothing integral over [" + format_double(a) + ", " +
                                                format_double(b) + "] did not converge");
        return r.value;
    };
    auto f_log_f_ds = [&](double x) {
        const double f = dist.pdf(x);
        return f > 0.0 ? f * (std::log2(f) + std::log2(std::fabs(x)) - log2_offset) : 0.0;
    };
    auto region_sum = [&](const Integrand& f) {
        return over(f, -u, 0.0) + over(f, 0.0, u) + over(f, -inf, -G) + over(f, G, inf);
    };

    SmoothingErrorReport rep;
    rep.epsilon = std::fabs(region_sum(f_log_f_ds));
    auto f_log_ds = [&](double x) {
        const double f = dist.pdf(x);
        return f > 0.0 ? f * (std::log2(std::fabs(x)) - log2_offset) : 0.0;
    };
    const double p_s = underflow_probability(dist, fmt);
    const double p_o = overflow_probability(dist, fmt);
    rep.epsilon_ratio =
        std::fabs(region_sum(f_log_ds) - p_s * std::log2(central) - p_o * std::log2(clipping));
    rep.bound = 0.5 * rep.dimension + rep.epsilon;
    rep.approx_H_tilde = approx_entropy_tilde(dist, fmt);
    rep.approx_H_s = approx_entropy_smooth(dist, fmt.precision());
    rep.observed_gap = std::fabs(rep.approx_H_tilde - rep.approx_H_s);
    return rep;
}

}  // namespace fpent
