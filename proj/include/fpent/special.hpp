#pragma once

// Special functions used by the distribution families and the closed-form
// entropy expressions. All throw std::domain_error at poles or outside their
// domain.

namespace fpent::special {

inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double ln2 = 0.69314718055994530942;
inline constexpr double log2e = 1.44269504088896340736;

/// log|Gamma(x)|. Thread safe (does not touch signgam).
double log_gamma(double x);
double digamma(double x);
double beta_fn(double a, double b);
double log_beta(double a, double b);

/// Regularized lower incomplete gamma P(s, x) and its complement Q(s, x).
double reg_inc_gamma_lower(double s, double x);
double reg_inc_gamma_upper(double s, double x);

/// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);
/// 1 - I_x(a, b), accurate when I_x(a, b) is close to one.
double reg_inc_beta_complement(double a, double b, double x);

double erf(double x);
double erfc(double x);

}  // namespace fpent::special
