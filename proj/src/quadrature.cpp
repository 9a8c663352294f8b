#include "fpent/quadrature.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "fpent/errors.hpp"

namespace fpent {
namespace {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double uflow = std::numeric_limits<double>::min();

double safe_eval(const Integrand& f, double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
}

struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = safe_eval(f, center);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::fabs(resk);
    double f1[7], f2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        f1[j] = safe_eval(f, center - dx);
        f2[j] = safe_eval(f, center + dx);
        resk += wgk[j] * (f1[j] + f2[j]);
        resabs += wgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
        if (j % 2 == 1) resg += wg[j / 2] * (f1[j] + f2[j]);
    }
    const double mean = resk * 0.5;
    double resasc = wgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
    const double ah = std::fabs(half);
    resasc *= ah;
    resabs *= ah;
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::fmin(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps)) err = std::fmax(50.0 * eps * resabs, err);
    return {a, b, resk * half, err};
}

QuadResult adaptive_finite(const Integrand& f, double a, double b, const QuadOptions& opt) {
    QuadResult out;
    if (a == b) return out;
    std::priority_queue<Piece> heap;
    heap.push(gk15(f, a, b));
    out.evaluations = 15;
    double total = heap.top().value;
    double err = heap.top().error;
    int splits = 0;
    while (err > std::fmax(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
        if (splits >= opt.max_subdivisions) {
            out.converged = false;
            break;
        }
        Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // cannot bisect further in double precision
            out.converged = false;
            break;
        }
        heap.pop();
        const Piece left = gk15(f, worst.a, mid);
        const Piece right = gk15(f, mid, worst.b);
        out.evaluations += 30;
        heap.push(left);
        heap.push(right);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        ++splits;
    }
    // resum to avoid drift from the running updates
    double sum = 0.0, comp = 0.0, e = 0.0;
    while (!heap.empty()) {
        const Piece& pc = heap.top();
        const double y = pc.value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        e += pc.error;
        heap.pop();
    }
    out.value = sum;
    out.abs_error = e;
    return out;
}

void accumulate(QuadResult& into, const QuadResult& part) {
    into.value += part.value;
    into.abs_error += part.abs_error;
    into.evaluations += part.evaluations;
    into.converged = into.converged && part.converged;
}

// [a, inf): finite head up to c, then x = c * exp(t / (1 - t)) on [0, 1).
// The logarithmic map keeps heavy power-law tails well resolved.
QuadResult upper_tail(const Integrand& f, double a, const QuadOptions& opt) {
    const double c = a > 0.0 ? a : 1.0;
    QuadResult out;
    if (a < c) accumulate(out, adaptive_finite(f, a, c, opt));
    const Integrand mapped = [&f, c](double t) {
        const double s = t / (1.0 - t);
        const double x = c * std::exp(s);
        if (!std::isfinite(x)) return 0.0;
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        return fx * x / ((1.0 - t) * (1.0 - t));
    };
    accumulate(out, adaptive_finite(mapped, 0.0, 1.0, opt));
    return out;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt) {
    if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("integrate: NaN limit");
    if (a == b) return {};
    if (a > b) {
        QuadResult r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);
    if (!lo_inf && !hi_inf) return adaptive_finite(f, a, b, opt);
    if (!lo_inf) return upper_tail(f, a, opt);
    const Integrand reflected = [&f](double x) { return f(-x); };
    if (!hi_inf) return upper_tail(reflected, -b, opt);
    QuadResult out = upper_tail(f, 0.0, opt);
    accumulate(out, upper_tail(reflected, 0.0, opt));
    return out;
}

QuadResult integrate_pieces(const Integrand& f, std::span<const double> points,
                            const QuadOptions& opt) {
    QuadResult out;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        if (points[k + 1] < points[k]) throw std::invalid_argument("integrate_pieces: points not sorted");
        if (points[k + 1] == points[k]) continue;
        accumulate(out, integrate(f, points[k], points[k + 1], opt));
    }
    return out;
}

namespace {

double checked(const QuadResult& r, const QuadOptions& opt, const char* component) {
    if (!r.converged) {
        std::ostringstream msg;
        msg << "quadrature did not converge (achieved abs error " << r.abs_error << ", requested "
            << opt.abs_tol << ", " << r.evaluations << " evaluations)";
        throw NumericalError(component, msg.str());
    }
    return r.value;
}

}  // namespace

double integrate_or_throw(const Integrand& f, double a, double b, const QuadOptions& opt,
                          const char* component) {
    return checked(integrate(f, a, b, opt), opt, component);
}

double integrate_pieces_or_throw(const Integrand& f, std::span<const double> points,
                                 const QuadOptions& opt, const char* component) {
    return checked(integrate_pieces(f, points, opt), opt, component);
}

}  // namespace fpent
