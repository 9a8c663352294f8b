#pragma once

#include <functional>
#include <span>

namespace fpent {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration on [a, b]. Either end
/// may be infinite. Integrable endpoint singularities are fine as long as
/// the integrand is finite at interior nodes. Non-finite integrand values
/// where the density has underflowed are treated as zero.
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt = {});

/// Integrate over consecutive pieces [points[k], points[k+1]]. The points
/// must be sorted; duplicates are skipped. Tolerances apply per piece.
QuadResult integrate_pieces(const Integrand& f, std::span<const double> points,
                            const QuadOptions& opt = {});

/// Like integrate(), but throws NumericalError(component, ...) with the
/// achieved error when the tolerance is not met.
double integrate_or_throw(const Integrand& f, double a, double b, const QuadOptions& opt,
                          const char* component);
double integrate_pieces_or_throw(const Integrand& f, std::span<const double> points,
                                 const QuadOptions& opt, const char* component);

}  // namespace fpent
