#pragma once

#include <array>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpent {

enum class Family {
    gaussian,
    uniform,
    gamma,
    chi2,
    laplace,
    logistic,
    weibull,
    lognormal,
    pareto,
    beta,
    student_t,
};

const char* family_name(Family f) noexcept;
std::vector<Family> all_families();

/// Parameter names accepted by the family, in positional order.
std::vector<std::string> family_parameters(Family f);

/// A univariate continuous distribution from one of the supported families.
/// Entropies and log-moments are returned in bits.
///
/// Beta and chi-squared take an optional `scale` parameter (default 1) so
/// that every family is closed under positive scaling.
class Distribution {
public:
    static Distribution gaussian(double sigma);
    static Distribution uniform(double a, double b);
    static Distribution gamma(double alpha, double theta);
    static Distribution chi2(double k, double scale = 1.0);
    static Distribution laplace(double b);
    static Distribution logistic(double s);
    static Distribution weibull(double lambda, double k);
    static Distribution lognormal(double mu, double sigma);
    static Distribution pareto(double xm, double alpha);
    static Distribution beta(double alpha, double beta, double scale = 1.0);
    static Distribution student_t(double nu, double s);

    /// Parses "family:name=value,name=value". Throws std::invalid_argument
    /// listing the valid families or parameters on error.
    static Distribution parse(std::string_view text);

    Family family() const noexcept { return family_; }
    std::string name() const { return family_name(family_); }
    /// Canonical "family:name=value,..." form; parse(to_string()) round-trips.
    std::string to_string() const;
    double param(std::string_view name) const;
    std::vector<std::pair<std::string, double>> params() const;

    double pdf(double x) const;
    double cdf(double x) const;
    double sf(double x) const;
    /// P(a < X < b) using whichever of cdf/sf keeps the difference accurate.
    double prob(double a, double b) const;
    /// log2 P(a < X < b); -inf when the probability underflows or a >= b.
    double log_cdf_diff(double a, double b) const;

    /// Differential entropy h(X) in bits.
    double differential_entropy() const;
    /// E[log2 |X|].
    double expected_log2_abs() const;

    std::pair<double, double> support() const;
    /// Interior points of the support where the density switches between
    /// increasing and decreasing. The density is monotone between
    /// consecutive entries of support endpoints and these points.
    std::vector<double> turning_points() const;
    /// Support endpoints plus turning points, sorted.
    std::vector<double> monotone_breakpoints() const;
    /// Points that split the real line into pieces each carrying a modest
    /// share of the mass: support endpoints, turning points, zero when
    /// inside the support, and a ladder of quantiles from 1e-15 to 1 - 1e-15.
    /// Quadrature over any interval should be split at the entries inside it,
    /// otherwise a density much narrower than the interval can be missed.
    std::vector<double> quadrature_breakpoints() const;

    /// Smallest x with cdf(x) >= q, found by bisection over the ordered bit
    /// patterns of doubles. q must lie in (0, 1).
    double quantile(double q) const;

    bool unimodal() const;
    /// True when the density is unbounded (at an endpoint of the support).
    bool density_unbounded() const;

    /// Distribution of aX for a > 0.
    Distribution scaled(double a) const;

    double sample(std::mt19937_64& rng) const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    Distribution(Family f, std::array<double, 3> v);
    void validate() const;

    Family family_;
    std::array<double, 3> v_;
};

}  // namespace fpent
