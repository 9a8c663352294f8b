#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fpent/distributions.hpp"
#include "fpent/quadrature.hpp"

using namespace fpent;

namespace {

std::vector<Distribution> zoo() {
    return {
        Distribution::gaussian(1.3),       Distribution::uniform(-1.0, 2.0),
        Distribution::uniform(0.5, 3.0),   Distribution::gamma(2.0, 1.5),
        Distribution::gamma(0.5, 2.0),     Distribution::chi2(3.0),
        Distribution::chi2(1.0, 2.0),      Distribution::laplace(0.7),
        Distribution::logistic(1.2),       Distribution::weibull(2.0, 1.5),
        Distribution::weibull(0.8, 1.0),   Distribution::weibull(1.0, 0.6),
        Distribution::lognormal(0.3, 0.8), Distribution::pareto(1.5, 2.5),
        Distribution::pareto(1.0, 0.9),    Distribution::beta(2.0, 3.0),
        Distribution::beta(0.5, 0.5),      Distribution::beta(0.7, 2.0, 3.0),
        Distribution::student_t(3.0, 1.5), Distribution::student_t(0.8, 1.0),
    };
}

std::vector<double> breaks(const Distribution& d) { return d.quadrature_breakpoints(); }

// A density with an integrable pole at a finite upper endpoint loses the
// mass within the last ulp below it, about 2 sqrt(ulp) / pi for Beta(., 1/2).
double quadrature_tolerance(const Distribution& d, double base) {
    if (d.family() == Family::beta && d.param("beta") < 1.0) return 1e-6;
    return base;
}

double integrate_density(const Distribution& d, const Integrand& g) {
    QuadOptions opt;
    opt.abs_tol = 1e-12;
    const auto pts = breaks(d);
    const auto r = integrate_pieces(
        [&](double x) {
            const double f = d.pdf(x);
            return f > 0.0 ? g(x) : 0.0;
        },
        pts, opt);
    EXPECT_TRUE(r.converged) << d.to_string();
    return r.value;
}

}  // namespace

TEST(Distributions, DensityIntegratesToOne) {
    for (const auto& d : zoo())
        EXPECT_NEAR(integrate_density(d, [&](double x) { return d.pdf(x); }), 1.0,
                    quadrature_tolerance(d, 1e-10))
            << d.to_string();
}

TEST(Distributions, CdfMatchesIntegratedDensity) {
    for (const auto& d : zoo()) {
        const auto [lo, hi] = d.support();
        for (double q : {0.05, 0.3, 0.5, 0.8, 0.97}) {
            // pick x with cdf(x) near q by bisection
            double a = std::isinf(lo) ? -1e6 : lo;
            double b = std::isinf(hi) ? 1e6 : hi;
            for (int i = 0; i < 200; ++i) {
                const double m = 0.5 * (a + b);
                (d.cdf(m) < q ? a : b) = m;
            }
            const double x = 0.5 * (a + b);
            auto pts = breaks(d);
            std::vector<double> upto;
            for (double t : pts)
                if (t < x) upto.push_back(t);
            upto.push_back(x);
            QuadOptions opt;
            opt.abs_tol = 1e-12;
            const double integral = integrate_pieces([&](double t) { return d.pdf(t); }, upto, opt).value;
            EXPECT_NEAR(d.cdf(x), integral, quadrature_tolerance(d, 1e-10)) << d.to_string() << " x=" << x;
            EXPECT_NEAR(d.cdf(x) + d.sf(x), 1.0, 1e-14) << d.to_string();
        }
    }
}

TEST(Distributions, EntropyMatchesQuadrature) {
    for (const auto& d : zoo()) {
        const double q = integrate_density(d, [&](double x) {
            const double f = d.pdf(x);
            return -f * std::log2(f);
        });
        EXPECT_NEAR(d.differential_entropy(), q, quadrature_tolerance(d, 1e-9)) << d.to_string();
    }
}

TEST(Distributions, LogMomentMatchesQuadrature) {
    for (const auto& d : zoo()) {
        const double q = integrate_density(d, [&](double x) { return d.pdf(x) * std::log2(std::fabs(x)); });
        EXPECT_NEAR(d.expected_log2_abs(), q, quadrature_tolerance(d, 1e-9)) << d.to_string();
    }
}

// mpmath references: E[log2|X|] for the standard Gaussian and Laplace.
TEST(Distributions, LogMomentReferenceValues) {
    EXPECT_NEAR(Distribution::gaussian(1.0).expected_log2_abs(), -0.91637308863843357532, 1e-14);
    EXPECT_NEAR(Distribution::laplace(1.0).expected_log2_abs(), -0.83274617727686715065, 1e-14);
}

TEST(Distributions, TailProbabilitiesStayAccurate) {
    const auto g = Distribution::gaussian(1.0);
    EXPECT_NEAR(g.sf(10.0) / 7.6198530241604696e-24, 1.0, 1e-12);
    EXPECT_NEAR(g.prob(10.0, INFINITY) / 7.6198530241604696e-24, 1.0, 1e-12);
    const auto t = Distribution::student_t(3.0, 1.0);
    EXPECT_NEAR(t.sf(1e3) / t.cdf(-1e3), 1.0, 1e-12);
    EXPECT_GT(t.sf(1e3), 0.0);
}

// log2(Phi(10) - Phi(9)) from an mpmath erfc difference.
TEST(Distributions, LogCdfDiff) {
    const auto g = Distribution::gaussian(1.0);
    EXPECT_EQ(g.cdf(0.0), 0.5);
    EXPECT_EQ(Distribution::uniform(-1.0, 1.0).cdf(0.5), 0.75);
    EXPECT_NEAR(g.log_cdf_diff(9.0, 10.0), -62.94221177822093457724, 1e-11);
    EXPECT_NEAR(g.log_cdf_diff(-10.0, -9.0), g.log_cdf_diff(9.0, 10.0), 1e-12);
    EXPECT_EQ(g.log_cdf_diff(1.0, 1.0), -INFINITY);
    EXPECT_EQ(g.log_cdf_diff(-INFINITY, INFINITY), 0.0);
}

TEST(Distributions, ScalingShiftsEntropyAndLogMoment) {
    for (const auto& d : zoo()) {
        for (double a : {0.125, 3.0, 1024.0}) {
            const auto s = d.scaled(a);
            EXPECT_NEAR(s.differential_entropy(), d.differential_entropy() + std::log2(a), 1e-12)
                << d.to_string();
            EXPECT_NEAR(s.expected_log2_abs(), d.expected_log2_abs() + std::log2(a), 1e-12)
                << d.to_string();
            for (double x : {0.3, 1.1, 2.5}) EXPECT_NEAR(s.cdf(a * x), d.cdf(x), 1e-13) << d.to_string();
        }
    }
    EXPECT_THROW(Distribution::gaussian(1.0).scaled(0.0), std::invalid_argument);
}

TEST(Distributions, MonotoneBetweenBreakpoints) {
    for (const auto& d : zoo()) {
        const auto pts = d.monotone_breakpoints();
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const double a = std::isinf(pts[k]) ? pts[k + 1] - 50.0 : pts[k];
            const double b = std::isinf(pts[k + 1]) ? pts[k] + 50.0 : pts[k + 1];
            int sign = 0;
            double prev = d.pdf(a + (b - a) * 1e-6);
            for (int i = 1; i <= 200; ++i) {
                const double x = a + (b - a) * (1e-6 + (1.0 - 2e-6) * i / 200.0);
                const double f = d.pdf(x);
                const int s = f > prev * (1 + 1e-12) ? 1 : (f < prev * (1 - 1e-12) ? -1 : 0);
                if (s != 0) {
                    EXPECT_TRUE(sign == 0 || sign == s) << d.to_string() << " segment " << k;
                    sign = s;
                }
                prev = f;
            }
        }
    }
}

TEST(Distributions, QuantileInvertsCdf) {
    for (const auto& d : zoo()) {
        for (double q : {1e-12, 0.01, 0.5, 0.9, 1 - 1e-9}) {
            // x is the first double at which the cdf reaches q
            auto reached = [&](double y) { return q <= 0.5 ? d.cdf(y) >= q : d.sf(y) <= 1 - q; };
            const double x = d.quantile(q);
            EXPECT_TRUE(reached(x)) << d.to_string() << " q=" << q;
            if (x > d.support().first) EXPECT_FALSE(reached(std::nextafter(x, -INFINITY))) << d.to_string();
        }
    }
    // a distribution far narrower than one still gets resolved
    const auto tiny = Distribution::gaussian(std::ldexp(1.0, -40));
    QuadOptions opt;
    opt.abs_tol = 1e-13;
    const auto pts = tiny.quadrature_breakpoints();
    EXPECT_NEAR(integrate_pieces([&](double x) { return tiny.pdf(x); }, pts, opt).value, 1.0, 1e-12);
}

TEST(Distributions, ShapeFlags) {
    EXPECT_FALSE(Distribution::beta(0.5, 0.5).unimodal());
    EXPECT_TRUE(Distribution::beta(2.0, 3.0).unimodal());
    EXPECT_TRUE(Distribution::gamma(0.5, 1.0).density_unbounded());
    EXPECT_FALSE(Distribution::gamma(1.0, 1.0).density_unbounded());
    EXPECT_TRUE(Distribution::weibull(1.0, 0.5).density_unbounded());
}

TEST(Distributions, ParseRoundTripsAndReportsErrors) {
    for (const auto& d : zoo()) EXPECT_EQ(Distribution::parse(d.to_string()), d) << d.to_string();
    EXPECT_EQ(Distribution::parse("gaussian:sigma=2"), Distribution::gaussian(2.0));
    EXPECT_EQ(Distribution::parse("normal:sigma=2"), Distribution::gaussian(2.0));
    EXPECT_EQ(Distribution::parse("chi2:k=4"), Distribution::chi2(4.0, 1.0));
    EXPECT_EQ(Distribution::parse("t:nu=3,s=1"), Distribution::student_t(3.0, 1.0));

    auto message = [](const char* text) {
        try {
            Distribution::parse(text);
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message("cauchy:s=1").find("valid families"), std::string::npos);
    EXPECT_NE(message("gaussian:mu=1").find("valid parameters: sigma"), std::string::npos);
    EXPECT_NE(message("gamma:alpha=2").find("missing parameter 'theta'"), std::string::npos);
    EXPECT_NE(message("gaussian:sigma=-1").find("positive"), std::string::npos);
    EXPECT_NE(message("uniform:a=2,b=1").find("a < b"), std::string::npos);
    EXPECT_NE(message("gaussian:sigma=abc").find("not a number"), std::string::npos);
    EXPECT_NE(message("gaussian:sigma=1,sigma=2").find("twice"), std::string::npos);
}

TEST(Distributions, SamplesFollowTheCdf) {
    std::mt19937_64 rng(2024);
    const int n = 40000;
    for (const auto& d : zoo()) {
        // empirical cdf at three quantile-ish points within 5 standard errors
        std::vector<double> xs;
        for (double q : {0.2, 0.5, 0.8}) {
            double a = -1e6, b = 1e6;
            for (int i = 0; i < 200; ++i) {
                const double m = 0.5 * (a + b);
                (d.cdf(m) < q ? a : b) = m;
            }
            xs.push_back(0.5 * (a + b));
        }
        std::vector<int> below(xs.size(), 0);
        for (int i = 0; i < n; ++i) {
            const double s = d.sample(rng);
            for (std::size_t k = 0; k < xs.size(); ++k) below[k] += s <= xs[k];
        }
        for (std::size_t k = 0; k < xs.size(); ++k) {
            const double q = d.cdf(xs[k]);
            const double se = std::sqrt(q * (1 - q) / n);
            EXPECT_NEAR(below[k] / double(n), q, 5 * se) << d.to_string();
        }
    }
}
