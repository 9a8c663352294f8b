// Acceptance run: one PASS/FAIL line per primary criterion, exit status 1
// if any fails. Tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fpent/bounds.hpp"
#include "fpent/entropy.hpp"
#include "fpent/monte_carlo.hpp"
#include "fpent/multivariate.hpp"
#include "fpent/numfmt.hpp"

using namespace fpent;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    const char* name;
    double time_limit;  // seconds, 0 for none
    std::function<Outcome()> check;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct Case {
    Distribution dist;
    FpFormat format;
};

std::vector<Case> matrix() {
    std::vector<Case> out;
    for (const auto& d : {Distribution::gaussian(1.0), Distribution::uniform(-1.0, 1.0), Distribution::gamma(2.0, 1.0)})
        for (auto [p, E] : {std::pair{1, 2}, {2, 2}, {3, 3}}) out.push_back({d, FpFormat(p, E)});
    return out;
}

Outcome closed_form_constants() {
    struct Row {
        Distribution d;
        double rounded;  // published constant, 4 decimals
    };
    const std::vector<Row> rows = {
        {Distribution::gaussian(1.0), 2.4635},
        {Distribution::uniform(-1.0, 1.0), 1.9427},
        {Distribution::laplace(1.0), 2.7756},
        {Distribution::logistic(1.0), 2.5700},
        {Distribution::weibull(1.0, 1.0), 1.7756},
        {Distribution::weibull(1.0, 2.0), 1.7756 - 1.0},
        {Distribution::weibull(3.0, 0.5), 1.7756 + 1.0},
        {Distribution::lognormal(0.0, 1.0), 1.5471},
        {Distribution::lognormal(0.7, 2.0), 1.5471 + 1.0},
        {Distribution::pareto(1.0, 1.0), 0.9427},
        {Distribution::pareto(2.0, 4.0), 0.9427 - 2.0},
    };
    double worst_rounded = 0.0, worst_closed = 0.0;
    for (const auto& r : rows) {
        for (int p : {3, 8}) {
            const double offset = approx_entropy_smooth(r.d, p) - p;
            worst_rounded = std::max(worst_rounded, std::fabs(offset - r.rounded));
            worst_closed = std::max(worst_closed, std::fabs(offset - (closed_form_approx_entropy(r.d, p) - p)));
        }
    }
    return {worst_rounded <= 5e-3 && worst_closed <= 1e-6,
            "max |offset - published| = " + fmt(worst_rounded) + " (tol 5e-3), max |offset - closed form| = " +
                fmt(worst_closed) + " (tol 1e-6), " + std::to_string(rows.size()) + " laws"};
}

Outcome exact_identity() {
    double worst = 0.0;
    for (const auto& c : matrix()) {
        RepresentableGrid grid(c.format);
        const double rhs = c.dist.differential_entropy() - expected_log_bin_size(c.dist, c.format) +
                           kl_divergence(c.dist, grid);
        worst = std::max(worst, std::fabs(exact_entropy(c.dist, grid) - rhs));
    }
    return {worst <= 1e-5, "max |H - (h - E[log2 D] + KL)| = " + fmt(worst) + " over 9 cases (tol 1e-5)"};
}

Outcome kl_sandwich() {
    double worst_low = -INFINITY, worst_up = -INFINITY, worst_feas = -INFINITY;
    std::size_t checks = 0;
    for (const auto& c : matrix()) {
        RepresentableGrid grid(c.format);
        const auto r = kl_bound_report(c.dist, grid, default_t_grid());
        worst_low = std::max(worst_low, r.lower - r.kl);
        worst_up = std::max(worst_up, r.kl - r.upper);
        for (std::uint64_t i = 0; i < grid.size(); ++i) {
            for (int k = 0; k < 20; ++k) {
                const double lambda = std::pow(2.0, -1.0 + 7.0 * k / 19.0);  // 1/2 .. 64
                worst_feas = std::max(worst_feas, superlevel_fraction(c.dist, grid, i, lambda) - 1.0 / lambda);
                ++checks;
            }
        }
    }
    const bool ok = worst_low <= 1e-6 && worst_up <= 1e-6 && worst_feas <= 1e-6;
    return {ok, "max(lower - KL) = " + fmt(worst_low) + ", max(KL - upper) = " + fmt(worst_up) +
                    " (slack 1e-6); max(L(lambda) - 1/lambda) = " + fmt(worst_feas) + " over " +
                    std::to_string(checks) + " bin/lambda pairs"};
}

Outcome smoothing_bound() {
    auto cases = matrix();
    for (auto [p, E] : {std::pair{1, 2}, {2, 2}, {3, 3}}) {
        const FpFormat f(p, E);
        cases.push_back({Distribution::gaussian(std::ldexp(1.0, f.e_max() + 2)), f});
        cases.push_back({Distribution::pareto(1.0, 0.9), FpFormat(p, 2)});
    }
    int violations = 0;
    double min_margin = INFINITY;
    for (const auto& c : cases) {
        const auto r = smoothing_epsilon(c.dist, c.format);
        if (!(r.observed_gap <= r.bound)) ++violations;
        min_margin = std::min(min_margin, r.bound - r.observed_gap);
    }
    return {violations == 0, std::to_string(violations) + " violations of |H~ - H~s| <= 1/2 + eps in " +
                                 std::to_string(cases.size()) + " cases, smallest margin " + fmt(min_margin)};
}

Outcome scale_invariance() {
    double worst_s = 0.0;
    for (Family fam : all_families()) {
        Distribution d = Distribution::gaussian(1.0);
        switch (fam) {
            case Family::gaussian: d = Distribution::gaussian(1.0); break;
            case Family::uniform: d = Distribution::uniform(-1.0, 2.0); break;
            case Family::gamma: d = Distribution::gamma(2.0, 1.0); break;
            case Family::chi2: d = Distribution::chi2(3.0); break;
            case Family::laplace: d = Distribution::laplace(1.0); break;
            case Family::logistic: d = Distribution::logistic(1.0); break;
            case Family::weibull: d = Distribution::weibull(1.0, 1.5); break;
            case Family::lognormal: d = Distribution::lognormal(0.0, 1.0); break;
            case Family::pareto: d = Distribution::pareto(1.0, 2.0); break;
            case Family::beta: d = Distribution::beta(2.0, 3.0); break;
            case Family::student_t: d = Distribution::student_t(3.0, 1.0); break;
        }
        const double base = approx_entropy_smooth(d, 3);
        for (int k = -10; k <= 10; ++k)
            worst_s = std::max(worst_s, std::fabs(approx_entropy_smooth(d.scaled(std::ldexp(1.0, k)), 3) - base));
    }
    const FpFormat f(3, 7);
    RepresentableGrid grid(f);
    double lo = INFINITY, hi = -INFINITY;
    for (int k = -160; k <= 160; ++k) {  // sigma = 2^(k/4)
        const double h = exact_entropy(Distribution::gaussian(std::exp2(k / 4.0)), grid);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    return {worst_s <= 1e-9 && hi - lo < 0.05,
            "max |dH~s| over a = 2^-10..2^10 = " + fmt(worst_s) + " (tol 1e-9); exact H peak-to-peak over sigma in " +
                "[2^-40, 2^40] = " + fmt(hi - lo) + " (tol 0.05)"};
}

Outcome precision_sweep() {
    const FpFormat probe(1, 7);
    std::string detail = "|H - (p + 2.4635)| for p = 1..8:";
    double worst = 0.0;
    for (int p = 1; p <= 8; ++p) {
        const FpFormat f(p, probe.exponent_bits());
        const double dev = std::fabs(exact_entropy(Distribution::gaussian(1.0), RepresentableGrid(f)) - (p + 2.4635));
        detail += " " + fmt(dev);
        if (p >= 3) worst = std::max(worst, dev);
    }
    return {worst <= 0.05, detail + "; max for p >= 3 = " + fmt(worst) + " (tol 0.05)"};
}

Outcome mc_oracle() {
    const auto g = Distribution::gaussian(1.0);
    const FpFormat f(3, 4);
    const double exact = exact_entropy(g, RepresentableGrid(f));
    const auto r = mc_entropy(g, f, {.sample_count = 10'000'000, .seed = 20240521, .bias_correction = false});
    const double gap = std::fabs(r.estimate - exact);
    return {gap <= 3 * r.std_error, "|mc - exact| = " + fmt(gap) + ", 3 std_error = " + fmt(3 * r.std_error) +
                                        " (n = 1e7, seed 20240521, exact " + format_double(exact) + ")"};
}

// Delta_s / Delta is linear in x on a bin, so the extremes sit at the
// edges. x 2^(1-p) in [Delta, 2 Delta] is the same test as the ratio lying
// in [1/sqrt2, sqrt2], and every term is an exact dyadic.
Outcome bin_ratio() {
    std::uint64_t bins = 0, violations = 0;
    for (int p = 1; p <= 6; ++p) {
        for (int E = 1; E <= 5; ++E) {
            const FpFormat f(p, E);
            RepresentableGrid grid(f);
            for (std::uint64_t i = 0; i < grid.size(); ++i) {
                if (grid.kind(i) == BinKind::central) continue;
                ++bins;
                const double w = grid.width(i);
                for (double x : {grid.lower(i), grid.value(i), grid.upper(i)}) {
                    const double s = std::ldexp(std::fabs(x), 1 - p);
                    if (s < w || s > 2 * w) {
                        ++violations;
                        break;
                    }
                }
            }
        }
    }
    return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(bins) +
                                 " non-central bins, p = 1..6, E = 1..5"};
}

Outcome multivariate() {
    const int p = 4;
    const double uni = approx_entropy_smooth(Distribution::gaussian(1.0), p);
    const MultivariateGaussian id(Eigen::MatrixXd::Identity(2, 2));
    const double id_err = std::fabs(mvg_approx_entropy_eigen(id, p) - 2 * uni);
    Eigen::MatrixXd c(2, 2);
    const double rho = 0.5;
    c << 1.0, rho, rho, 1.0;
    const MultivariateGaussian corr(c);
    const double corr_err =
        std::fabs(mvg_approx_entropy_eigen(corr, p) - (2 * uni + 0.5 * std::log2(1 - rho * rho)));
    const double route_err = std::fabs(mvg_approx_entropy_eigen(corr, p) - mvg_approx_entropy_det(corr, p));
    const double worst = std::max({id_err, corr_err, route_err});
    return {worst <= 1e-9, "identity error " + fmt(id_err) + ", rho = 0.5 correction error " + fmt(corr_err) +
                               ", eigen vs determinant " + fmt(route_err) + " (tol 1e-9)"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"closed-form-constants", 1.0, closed_form_constants},
        {"exact-identity", 30.0, exact_identity},
        {"kl-sandwich", 60.0, kl_sandwich},
        {"smoothing-bound", 0.0, smoothing_bound},
        {"scale-invariance", 0.0, scale_invariance},
        {"precision-sweep", 0.0, precision_sweep},
        {"mc-oracle", 60.0, mc_oracle},
        {"bin-ratio", 0.0, bin_ratio},
        {"multivariate", 0.0, multivariate},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass;
        std::string timing = fmt(secs) + " s";
        if (c.time_limit > 0) {
            timing += " (limit " + fmt(c.time_limit) + " s)";
            pass = pass && secs < c.time_limit;
        }
        std::printf("%s  %-22s %s; %s\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), timing.c_str());
        failed += !pass;
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
