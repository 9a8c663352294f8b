#include "fpent/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fpent/numfmt.hpp"
#include "fpent/special.hpp"

namespace fpent {

using special::euler_gamma;
using special::ln2;
using special::pi;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double sqrt2 = 1.41421356237309504880;
constexpr double ln_sqrt_2pi = 0.91893853320467274178;

struct FamilyInfo {
    Family family;
    const char* name;
    std::vector<std::string> params;
    std::vector<double> defaults;  // NaN marks a required parameter
};

const std::vector<FamilyInfo>& family_table() {
    static const double req = std::numeric_limits<double>::quiet_NaN();
    static const std::vector<FamilyInfo> table = {
        {Family::gaussian, "gaussian", {"sigma"}, {req}},
        {Family::uniform, "uniform", {"a", "b"}, {req, req}},
        {Family::gamma, "gamma", {"alpha", "theta"}, {req, req}},
        {Family::chi2, "chi2", {"k", "scale"}, {req, 1.0}},
        {Family::laplace, "laplace", {"b"}, {req}},
        {Family::logistic, "logistic", {"s"}, {req}},
        {Family::weibull, "weibull", {"lambda", "k"}, {req, req}},
        {Family::lognormal, "lognormal", {"mu", "sigma"}, {req, req}},
        {Family::pareto, "pareto", {"xm", "alpha"}, {req, req}},
        {Family::beta, "beta", {"alpha", "beta", "scale"}, {req, req, 1.0}},
        {Family::student_t, "student_t", {"nu", "s"}, {req, req}},
    };
    return table;
}

const FamilyInfo& info(Family f) {
    for (const auto& fi : family_table())
        if (fi.family == f) return fi;
    throw std::logic_error("unknown family");
}

// Gamma(alpha, theta) helpers, shared with chi-squared.
double gamma_pdf(double a, double th, double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (a < 1.0) return inf;
        return a == 1.0 ? 1.0 / th : 0.0;
    }
    if (std::isinf(x)) return 0.0;
    const double z = x / th;
    return std::exp((a - 1.0) * std::log(z) - z - special::log_gamma(a)) / th;
}

double gamma_entropy(double a, double th) {
    return a + std::log(th) + special::log_gamma(a) + (1.0 - a) * special::digamma(a);
}

double beta_pdf(double a, double b, double sc, double x) {
    const double y = x / sc;
    if (y < 0.0 || y > 1.0) return 0.0;
    if (y == 0.0) {
        if (a < 1.0) return inf;
        return a == 1.0 ? b / sc : 0.0;
    }
    if (y == 1.0) {
        if (b < 1.0) return inf;
        return b == 1.0 ? a / sc : 0.0;
    }
    return std::exp((a - 1.0) * std::log(y) + (b - 1.0) * std::log1p(-y) - special::log_beta(a, b)) / sc;
}

double xlogabs(double x) { return x == 0.0 ? 0.0 : x * std::log(std::fabs(x)); }

}  // namespace

const char* family_name(Family f) noexcept {
    for (const auto& fi : family_table())
        if (fi.family == f) return fi.name;
    return "unknown";
}

std::vector<Family> all_families() {
    std::vector<Family> out;
    for (const auto& fi : family_table()) out.push_back(fi.family);
    return out;
}

std::vector<std::string> family_parameters(Family f) { return info(f).params; }

Distribution::Distribution(Family f, std::array<double, 3> v) : family_(f), v_(v) { validate(); }

Distribution Distribution::gaussian(double sigma) { return {Family::gaussian, {sigma, 0, 0}}; }
Distribution Distribution::uniform(double a, double b) { return {Family::uniform, {a, b, 0}}; }
Distribution Distribution::gamma(double alpha, double theta) { return {Family::gamma, {alpha, theta, 0}}; }
Distribution Distribution::chi2(double k, double scale) { return {Family::chi2, {k, scale, 0}}; }
Distribution Distribution::laplace(double b) { return {Family::laplace, {b, 0, 0}}; }
Distribution Distribution::logistic(double s) { return {Family::logistic, {s, 0, 0}}; }
Distribution Distribution::weibull(double lambda, double k) { return {Family::weibull, {lambda, k, 0}}; }
Distribution Distribution::lognormal(double mu, double sigma) { return {Family::lognormal, {mu, sigma, 0}}; }
Distribution Distribution::pareto(double xm, double alpha) { return {Family::pareto, {xm, alpha, 0}}; }
Distribution Distribution::beta(double alpha, double beta, double scale) {
    return {Family::beta, {alpha, beta, scale}};
}
Distribution Distribution::student_t(double nu, double s) { return {Family::student_t, {nu, s, 0}}; }

void Distribution::validate() const {
    const auto& fi = info(family_);
    for (std::size_t i = 0; i < fi.params.size(); ++i) {
        if (!std::isfinite(v_[i]))
            throw std::invalid_argument(std::string(fi.name) + ": parameter " + fi.params[i] +
                                        " must be finite");
    }
    auto positive = [&](std::size_t i) {
        if (!(v_[i] > 0.0))
            throw std::invalid_argument(std::string(fi.name) + ": parameter " + fi.params[i] +
                                        " must be positive, got " + format_double(v_[i]));
    };
    switch (family_) {
        case Family::uniform:
            if (!(v_[0] < v_[1])) throw std::invalid_argument("uniform: need a < b");
            break;
        case Family::lognormal: positive(1); break;
        default:
            for (std::size_t i = 0; i < fi.params.size(); ++i) positive(i);
    }
}

Distribution Distribution::parse(std::string_view text) {
    static const std::map<std::string, Family, std::less<>> aliases = {
        {"normal", Family::gaussian}, {"chisquared", Family::chi2}, {"chi-squared", Family::chi2},
        {"t", Family::student_t},     {"studentt", Family::student_t}};

    auto valid_families = [] {
        std::string s;
        for (const auto& fi : family_table()) {
            if (!s.empty()) s += ", ";
            s += fi.name;
            s += "(";
            for (std::size_t i = 0; i < fi.params.size(); ++i) s += (i ? "," : "") + fi.params[i];
            s += ")";
        }
        return s;
    };

    const auto colon = text.find(':');
    const std::string_view fam = text.substr(0, colon);
    const FamilyInfo* fi = nullptr;
    for (const auto& cand : family_table())
        if (fam == cand.name) fi = &cand;
    if (!fi) {
        if (auto it = aliases.find(fam); it != aliases.end()) fi = &info(it->second);
    }
    if (!fi)
        throw std::invalid_argument("unknown distribution '" + std::string(fam) +
                                    "'; valid families: " + valid_families());

    std::array<double, 3> v{};
    std::vector<bool> seen(fi->params.size(), false);
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("distribution parameter '" + std::string(item) +
                                        "' is not of the form name=value");
        const std::string_view key = item.substr(0, eq);
        std::size_t idx = fi->params.size();
        for (std::size_t i = 0; i < fi->params.size(); ++i)
            if (key == fi->params[i]) idx = i;
        if (idx == fi->params.size()) {
            std::string names;
            for (const auto& n : fi->params) names += (names.empty() ? "" : ", ") + n;
            throw std::invalid_argument(std::string(fi->name) + ": unknown parameter '" +
                                        std::string(key) + "'; valid parameters: " + names);
        }
        if (seen[idx])
            throw std::invalid_argument(std::string(fi->name) + ": parameter '" + std::string(key) +
                                        "' given twice");
        seen[idx] = true;
        v[idx] = parse_double(item.substr(eq + 1));
    }
    for (std::size_t i = 0; i < fi->params.size(); ++i) {
        if (seen[i]) continue;
        if (std::isnan(fi->defaults[i]))
            throw std::invalid_argument(std::string(fi->name) + ": missing parameter '" +
                                        fi->params[i] + "'");
        v[i] = fi->defaults[i];
    }
    return {fi->family, v};
}

std::string Distribution::to_string() const {
    const auto& fi = info(family_);
    std::string s = fi.name;
    for (std::size_t i = 0; i < fi.params.size(); ++i) {
        s += i ? "," : ":";
        s += fi.params[i] + "=" + format_double(v_[i]);
    }
    return s;
}

double Distribution::param(std::string_view name) const {
    const auto& fi = info(family_);
    for (std::size_t i = 0; i < fi.params.size(); ++i)
        if (name == fi.params[i]) return v_[i];
    throw std::invalid_argument(std::string(fi.name) + " has no parameter '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, double>> Distribution::params() const {
    const auto& fi = info(family_);
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < fi.params.size(); ++i) out.emplace_back(fi.params[i], v_[i]);
    return out;
}

double Distribution::pdf(double x) const {
    const auto [p0, p1, p2] = v_;
    switch (family_) {
        case Family::gaussian: {
            const double z = x / p0;
            return std::exp(-0.5 * z * z - ln_sqrt_2pi) / p0;
        }
        case Family::uniform: return (x >= p0 && x <= p1) ? 1.0 / (p1 - p0) : 0.0;
        case Family::gamma: return gamma_pdf(p0, p1, x);
        case Family::chi2: return gamma_pdf(0.5 * p0, 2.0 * p1, x);
        case Family::laplace: return std::exp(-std::fabs(x) / p0) / (2.0 * p0);
        case Family::logistic: {
            const double e = std::exp(-std::fabs(x) / p0);
            return e / (p0 * (1.0 + e) * (1.0 + e));
        }
        case Family::weibull: {
            if (x < 0.0 || std::isinf(x)) return 0.0;
            if (x == 0.0) return p1 < 1.0 ? inf : (p1 == 1.0 ? 1.0 / p0 : 0.0);
            const double z = x / p0;
            return (p1 / p0) * std::exp((p1 - 1.0) * std::log(z) - std::pow(z, p1));
        }
        case Family::lognormal: {
            if (x <= 0.0 || std::isinf(x)) return 0.0;
            const double z = (std::log(x) - p0) / p1;
            return std::exp(-0.5 * z * z - ln_sqrt_2pi) / (p1 * x);
        }
        case Family::pareto:
            if (x < p0) return 0.0;
            return p1 / p0 * std::exp(-(p1 + 1.0) * std::log(x / p0));
        case Family::beta: return beta_pdf(p0, p1, p2, x);
        case Family::student_t: {
            const double t = x / p1;
            const double lognorm = special::log_gamma(0.5 * (p0 + 1.0)) - special::log_gamma(0.5 * p0) -
                                   0.5 * std::log(p0 * pi);
            return std::exp(lognorm - 0.5 * (p0 + 1.0) * std::log1p(t * t / p0)) / p1;
        }
    }
    return 0.0;
}

double Distribution::cdf(double x) const {
    const auto [p0, p1, p2] = v_;
    if (std::isnan(x)) return x;
    switch (family_) {
        case Family::gaussian: return 0.5 * special::erfc(-x / (p0 * sqrt2));
        case Family::uniform:
            if (x <= p0) return 0.0;
            if (x >= p1) return 1.0;
            return (x - p0) / (p1 - p0);
        case Family::gamma: return x <= 0.0 ? 0.0 : special::reg_inc_gamma_lower(p0, x / p1);
        case Family::chi2: return x <= 0.0 ? 0.0 : special::reg_inc_gamma_lower(0.5 * p0, x / (2.0 * p1));
        case Family::laplace:
            return x < 0.0 ? 0.5 * std::exp(x / p0) : 1.0 - 0.5 * std::exp(-x / p0);
        case Family::logistic: return 1.0 / (1.0 + std::exp(-x / p0));
        case Family::weibull: return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / p0, p1));
        case Family::lognormal:
            return x <= 0.0 ? 0.0 : 0.5 * special::erfc(-(std::log(x) - p0) / (p1 * sqrt2));
        case Family::pareto: return x <= p0 ? 0.0 : -std::expm1(p1 * std::log(p0 / x));
        case Family::beta:
            if (x <= 0.0) return 0.0;
            if (x >= p2) return 1.0;
            return special::reg_inc_beta(p0, p1, x / p2);
        case Family::student_t: {
            if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
            const double t = x / p1;
            const double w = p0 / (p0 + t * t);
            const double z = t * t / (p0 + t * t);
            if (z < w) {
                // near the centre: central mass P(|T| < |t|) without forming 1 - w
                const double central = special::reg_inc_beta(0.5, 0.5 * p0, z);
                return t < 0.0 ? 0.5 * (1.0 - central) : 0.5 * (1.0 + central);
            }
            const double tail = 0.5 * special::reg_inc_beta(0.5 * p0, 0.5, w);
            return t < 0.0 ? tail : 1.0 - tail;
        }
    }
    return 0.0;
}

double Distribution::sf(double x) const {
    const auto [p0, p1, p2] = v_;
    if (std::isnan(x)) return x;
    switch (family_) {
        case Family::gaussian: return 0.5 * special::erfc(x / (p0 * sqrt2));
        case Family::uniform:
            if (x <= p0) return 1.0;
            if (x >= p1) return 0.0;
            return (p1 - x) / (p1 - p0);
        case Family::gamma: return x <= 0.0 ? 1.0 : special::reg_inc_gamma_upper(p0, x / p1);
        case Family::chi2: return x <= 0.0 ? 1.0 : special::reg_inc_gamma_upper(0.5 * p0, x / (2.0 * p1));
        case Family::laplace:
            return x < 0.0 ? 1.0 - 0.5 * std::exp(x / p0) : 0.5 * std::exp(-x / p0);
        case Family::logistic: return 1.0 / (1.0 + std::exp(x / p0));
        case Family::weibull: return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / p0, p1));
        case Family::lognormal:
            return x <= 0.0 ? 1.0 : 0.5 * special::erfc((std::log(x) - p0) / (p1 * sqrt2));
        case Family::pareto: return x <= p0 ? 1.0 : std::exp(p1 * std::log(p0 / x));
        case Family::beta:
            if (x <= 0.0) return 1.0;
            if (x >= p2) return 0.0;
            return special::reg_inc_beta_complement(p0, p1, x / p2);
        case Family::student_t: return cdf(-x);
    }
    return 0.0;
}

double Distribution::prob(double a, double b) const {
    if (!(a < b)) return 0.0;
    const double ca = cdf(a);
    const double d = ca > 0.5 ? sf(a) - sf(b) : cdf(b) - ca;
    return std::max(d, 0.0);
}

double Distribution::log_cdf_diff(double a, double b) const {
    const double q = prob(a, b);
    return q > 0.0 ? std::log2(q) : -std::numeric_limits<double>::infinity();
}

double Distribution::differential_entropy() const {
    const auto [p0, p1, p2] = v_;
    double nats = 0.0;
    switch (family_) {
        case Family::gaussian: nats = 0.5 * std::log(2.0 * pi * std::exp(1.0) * p0 * p0); break;
        case Family::uniform: nats = std::log(p1 - p0); break;
        case Family::gamma: nats = gamma_entropy(p0, p1); break;
        case Family::chi2: nats = gamma_entropy(0.5 * p0, 2.0 * p1); break;
        case Family::laplace: nats = 1.0 + std::log(2.0 * p0); break;
        case Family::logistic: nats = std::log(p0) + 2.0; break;
        case Family::weibull: nats = euler_gamma * (1.0 - 1.0 / p1) + std::log(p0 / p1) + 1.0; break;
        case Family::lognormal: nats = p0 + 0.5 * std::log(2.0 * pi * std::exp(1.0) * p1 * p1); break;
        case Family::pareto: nats = std::log(p0 / p1) + 1.0 + 1.0 / p1; break;
        case Family::beta:
            nats = special::log_beta(p0, p1) - (p0 - 1.0) * special::digamma(p0) -
                   (p1 - 1.0) * special::digamma(p1) + (p0 + p1 - 2.0) * special::digamma(p0 + p1) +
                   std::log(p2);
            break;
        case Family::student_t:
            nats = std::log(p1 * std::sqrt(p0)) + special::log_beta(0.5 * p0, 0.5) +
                   0.5 * (p0 + 1.0) * (special::digamma(0.5 * (p0 + 1.0)) - special::digamma(0.5 * p0));
            break;
    }
    return nats / ln2;
}

double Distribution::expected_log2_abs() const {
    const auto [p0, p1, p2] = v_;
    double nats = 0.0;
    switch (family_) {
        case Family::gaussian: nats = std::log(p0) - 0.5 * (euler_gamma + ln2); break;
        case Family::uniform: nats = (xlogabs(p1) - xlogabs(p0)) / (p1 - p0) - 1.0; break;
        case Family::gamma: nats = special::digamma(p0) + std::log(p1); break;
        case Family::chi2: nats = special::digamma(0.5 * p0) + std::log(2.0 * p1); break;
        case Family::laplace: nats = std::log(p0) - euler_gamma; break;
        case Family::logistic: nats = std::log(p0) + std::log(0.5 * pi) - euler_gamma; break;
        case Family::weibull: nats = std::log(p0) - euler_gamma / p1; break;
        case Family::lognormal: nats = p0; break;
        case Family::pareto: nats = std::log(p0) + 1.0 / p1; break;
        case Family::beta: nats = special::digamma(p0) - special::digamma(p0 + p1) + std::log(p2); break;
        case Family::student_t:
            nats = std::log(p1) + 0.5 * (std::log(p0) + special::digamma(0.5) - special::digamma(0.5 * p0));
            break;
    }
    return nats / ln2;
}

std::pair<double, double> Distribution::support() const {
    switch (family_) {
        case Family::uniform: return {v_[0], v_[1]};
        case Family::gamma:
        case Family::chi2:
        case Family::weibull:
        case Family::lognormal: return {0.0, inf};
        case Family::pareto: return {v_[0], inf};
        case Family::beta: return {0.0, v_[2]};
        default: return {-inf, inf};
    }
}

std::vector<double> Distribution::turning_points() const {
    const auto [p0, p1, p2] = v_;
    switch (family_) {
        case Family::gaussian:
        case Family::laplace:
        case Family::logistic:
        case Family::student_t: return {0.0};
        case Family::gamma:
            if (p0 > 1.0) return {(p0 - 1.0) * p1};
            return {};
        case Family::chi2:
            if (p0 > 2.0) return {(p0 - 2.0) * p1};
            return {};
        case Family::weibull:
            if (p1 > 1.0) return {p0 * std::pow((p1 - 1.0) / p1, 1.0 / p1)};
            return {};
        case Family::lognormal: return {std::exp(p0 - p1 * p1)};
        case Family::beta:
            if (p0 > 1.0 && p1 > 1.0) return {p2 * (p0 - 1.0) / (p0 + p1 - 2.0)};
            if (p0 < 1.0 && p1 < 1.0) return {p2 * (1.0 - p0) / (2.0 - p0 - p1)};
            return {};
        default: return {};
    }
}

std::vector<double> Distribution::monotone_breakpoints() const {
    const auto [lo, hi] = support();
    std::vector<double> pts{lo};
    for (double t : turning_points()) pts.push_back(t);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace {

// Monotone map between doubles and signed integers preserving order.
std::int64_t ordered_bits(double x) {
    std::int64_t i = 0;
    std::memcpy(&i, &x, sizeof x);
    return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
}

double from_ordered_bits(std::int64_t i) {
    if (i < 0) i = std::numeric_limits<std::int64_t>::min() - i;
    double x = 0.0;
    std::memcpy(&x, &i, sizeof x);
    return x;
}

}  // namespace

double Distribution::quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("quantile level must lie in (0, 1)");
    auto [lo_x, hi_x] = support();
    if (std::isinf(lo_x)) lo_x = -std::numeric_limits<double>::max();
    if (std::isinf(hi_x)) hi_x = std::numeric_limits<double>::max();
    // cdf(x) >= q, evaluated on the side that keeps q representable
    auto reached = [&](double x) { return q <= 0.5 ? cdf(x) >= q : sf(x) <= 1.0 - q; };
    std::int64_t lo = ordered_bits(lo_x);
    std::int64_t hi = ordered_bits(hi_x);
    if (reached(lo_x)) return lo_x;
    auto gap = [](std::int64_t a, std::int64_t b) {
        return static_cast<std::uint64_t>(b) - static_cast<std::uint64_t>(a);
    };
    while (gap(lo, hi) > 1) {
        const auto mid = static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + gap(lo, hi) / 2);
        if (reached(from_ordered_bits(mid)))
            hi = mid;
        else
            lo = mid;
    }
    return from_ordered_bits(hi);
}

std::vector<double> Distribution::quadrature_breakpoints() const {
    std::vector<double> pts = monotone_breakpoints();
    const auto [lo, hi] = support();
    if (lo < 0.0 && hi > 0.0) pts.push_back(0.0);
    static const double levels[] = {1e-15, 1e-12, 1e-9, 1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.1,
                                    0.2,   0.3,   0.4,  0.5,  0.6,  0.7,  0.8,  0.9,  0.95,
                                    0.99,  0.999, 0.9999, 1 - 1e-6, 1 - 1e-9, 1 - 1e-12, 1 - 1e-15};
    for (double q : levels) pts.push_back(quantile(q));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

bool Distribution::unimodal() const {
    return !(family_ == Family::beta && v_[0] < 1.0 && v_[1] < 1.0);
}

bool Distribution::density_unbounded() const {
    switch (family_) {
        case Family::gamma: return v_[0] < 1.0;
        case Family::chi2: return v_[0] < 2.0;
        case Family::weibull: return v_[1] < 1.0;
        case Family::beta: return v_[0] < 1.0 || v_[1] < 1.0;
        default: return false;
    }
}

Distribution Distribution::scaled(double a) const {
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("scale factor must be positive and finite");
    auto [p0, p1, p2] = v_;
    switch (family_) {
        case Family::gaussian:
        case Family::laplace:
        case Family::logistic: p0 *= a; break;
        case Family::uniform:
            p0 *= a;
            p1 *= a;
            break;
        case Family::gamma:
        case Family::chi2:
        case Family::student_t: p1 *= a; break;
        case Family::weibull:
        case Family::pareto: p0 *= a; break;
        case Family::lognormal: p0 += std::log(a); break;
        case Family::beta: p2 *= a; break;
    }
    return {family_, {p0, p1, p2}};
}

double Distribution::sample(std::mt19937_64& rng) const {
    const auto [p0, p1, p2] = v_;
    switch (family_) {
        case Family::gaussian: return std::normal_distribution<double>(0.0, p0)(rng);
        case Family::uniform: return std::uniform_real_distribution<double>(p0, p1)(rng);
        case Family::gamma: return std::gamma_distribution<double>(p0, p1)(rng);
        case Family::chi2: return p1 * std::chi_squared_distribution<double>(p0)(rng);
        case Family::laplace: {
            const double e = std::exponential_distribution<double>(1.0 / p0)(rng);
            return (rng() & 1u) ? e : -e;
        }
        case Family::logistic: {
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            double u = 0.0;
            do u = u01(rng);
            while (u == 0.0);
            return p0 * std::log(u / (1.0 - u));
        }
        case Family::weibull: return std::weibull_distribution<double>(p1, p0)(rng);
        case Family::lognormal: return std::lognormal_distribution<double>(p0, p1)(rng);
        case Family::pareto: {
            const double u = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            return p0 * std::pow(u, -1.0 / p1);
        }
        case Family::beta: {
            const double x = std::gamma_distribution<double>(p0, 1.0)(rng);
            const double y = std::gamma_distribution<double>(p1, 1.0)(rng);
            return p2 * x / (x + y);
        }
        case Family::student_t: return p1 * std::student_t_distribution<double>(p0)(rng);
    }
    return 0.0;
}

}  // namespace fpent
