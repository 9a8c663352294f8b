#include "fpent/format.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpent {

FpFormat::FpFormat(int precision, int exponent_bits) : p_(precision), E_(exponent_bits) {
    if (precision < 1)
        throw std::invalid_argument("precision must be >= 1, got " + std::to_string(precision));
    if (exponent_bits < 1)
        throw std::invalid_argument("exponent bits must be >= 1, got " + std::to_string(exponent_bits));
    if (exponent_bits > max_exponent_bits)
        throw std::invalid_argument("exponent bits must be <= " + std::to_string(max_exponent_bits) +
                                    " so the format fits in binary64, got " +
                                    std::to_string(exponent_bits));
    if (precision + exponent_bits > max_total_bits)
        throw std::invalid_argument("precision + exponent bits must be <= " +
                                    std::to_string(max_total_bits) + ", got " +
                                    std::to_string(precision + exponent_bits));
}

double FpFormat::granular_bound() const noexcept {
    return std::ldexp(1.0, e_max() + 1) - std::ldexp(1.0, e_max() - p_);
}

double FpFormat::underflow_bound() const noexcept { return std::ldexp(1.0, e_min()); }

std::string FpFormat::to_string() const {
    return "p=" + std::to_string(p_) + ",E=" + std::to_string(E_);
}

double round_p(double alpha, int precision) {
    const double steps = std::ldexp(1.0, precision - 1);
    const double scaled = alpha * steps;
    // floor plus an exact fractional comparison; adding 0.5 first would
    // round values just below a tie upward.
    double i = std::floor(scaled);
    if (scaled - i >= 0.5) i += 1.0;
    i = std::clamp(i, 0.0, steps);
    return i / steps;
}

double FpValue::mantissa() const noexcept {
    return std::ldexp(static_cast<double>(mantissa_index), 1 - precision);
}

double FpValue::value() const noexcept {
    const double sig = std::ldexp(1.0, precision - 1) + static_cast<double>(mantissa_index);
    return sign * std::ldexp(sig, exponent - (precision - 1));
}

FpValue encode(double x, const FpFormat& fmt) {
    if (x == 0.0) throw std::domain_error("cannot encode zero: the format has no zero");
    if (!std::isfinite(x)) throw std::invalid_argument("cannot encode a non-finite value");

    const int p = fmt.precision();
    const int sign = std::signbit(x) ? -1 : 1;
    const double mag = std::fabs(x);
    const std::uint64_t largest_m = fmt.values_per_exponent() - 1;

    const int lg = std::ilogb(mag);
    if (lg >= fmt.e_max() + 1) return {sign, fmt.e_max(), largest_m, p};

    const int e = std::clamp(lg, fmt.e_min(), fmt.e_max());
    const double r = round_p(std::ldexp(mag, -e) - 1.0, p);
    if (r == 1.0) {
        if (e == fmt.e_max()) return {sign, e, largest_m, p};
        return {sign, e + 1, 0, p};
    }
    const auto m = static_cast<std::uint64_t>(std::ldexp(r, p - 1));
    return {sign, e, m, p};
}

Region classify(double x, const FpFormat& fmt) {
    const double mag = std::fabs(x);
    if (mag <= fmt.underflow_bound()) return Region::underflow;
    if (mag > fmt.granular_bound()) return Region::overflow;
    return Region::granular;
}

const char* to_string(BinKind kind) noexcept {
    switch (kind) {
        case BinKind::central: return "central";
        case BinKind::interior: return "interior";
        case BinKind::exponent_boundary: return "exponent_boundary";
        case BinKind::outer_clipping: return "outer_clipping";
    }
    return "unknown";
}

FpValue RepresentableGrid::at(std::uint64_t i) const {
    const std::uint64_t half = size() / 2;
    if (i >= size()) throw std::out_of_range("grid index out of range");
    const bool positive = i >= half;
    const std::uint64_t j = positive ? i - half : half - 1 - i;
    const std::uint64_t per = fmt_.values_per_exponent();
    const int p = fmt_.precision();
    return {positive ? 1 : -1, fmt_.e_min() + static_cast<int>(j / per), j % per, p};
}

double RepresentableGrid::value(std::uint64_t i) const { return at(i).value(); }

// Neighbouring values have at most p significant bits and exponents that
// differ by at most one, so their sum and half are exact.
double RepresentableGrid::lower(std::uint64_t i) const {
    if (i == 0) return -fmt_.granular_bound();
    return 0.5 * (value(i - 1) + value(i));
}

double RepresentableGrid::upper(std::uint64_t i) const {
    if (i + 1 >= size()) return fmt_.granular_bound();
    return 0.5 * (value(i) + value(i + 1));
}

BinKind RepresentableGrid::kind(std::uint64_t i) const {
    const std::uint64_t half = size() / 2;
    const std::uint64_t j = i >= half ? i - half : half - 1 - i;
    if (j == 0) return BinKind::central;
    if (j == half - 1) return BinKind::outer_clipping;
    if (j % fmt_.values_per_exponent() == 0) return BinKind::exponent_boundary;
    return BinKind::interior;
}

std::uint64_t RepresentableGrid::index_of(const FpValue& v) const {
    const std::uint64_t half = size() / 2;
    const std::uint64_t j =
        static_cast<std::uint64_t>(v.exponent - fmt_.e_min()) * fmt_.values_per_exponent() +
        v.mantissa_index;
    return v.sign > 0 ? half + j : half - 1 - j;
}

std::uint64_t RepresentableGrid::locate(double x) const {
    if (x == 0.0) throw std::domain_error("cannot quantize zero: the format has no zero");
    if (std::isnan(x)) throw std::invalid_argument("cannot quantize NaN");
    // Search the positive half and mirror, so ties round away from zero on
    // both sides exactly as encode() does.
    const double mag = std::fabs(x);
    std::uint64_t lo = size() / 2;
    std::uint64_t hi = size() - 1;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (mag < upper(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return x > 0.0 ? lo : size() - 1 - lo;
}

std::vector<double> RepresentableGrid::values() const {
    std::vector<double> out(size());
    for (std::uint64_t i = 0; i < size(); ++i) out[i] = value(i);
    return out;
}

double bin_size(double x, const FpFormat& fmt) {
    if (x == 0.0 || !(std::fabs(x) <= fmt.granular_bound()))
        throw std::domain_error("bin_size requires 0 < |x| <= G");
    RepresentableGrid grid(fmt);
    return grid.width(grid.locate(x));
}

double smooth_bin_size(double x, int precision) {
    return std::fabs(x) * std::ldexp(1.0, 1 - precision) / std::sqrt(2.0);
}

std::vector<WidthSegment> positive_width_segments(const FpFormat& fmt) {
    const int p = fmt.precision();
    std::vector<WidthSegment> out;
    auto pow2 = [](int k) { return std::ldexp(1.0, k); };

    const int e0 = fmt.e_min();
    out.push_back({0.0, pow2(e0) + pow2(e0 - p), pow2(e0) + pow2(e0 - p)});
    for (int e = e0; e <= fmt.e_max(); ++e) {
        if (e > e0) {
            // first bin of the binade straddles 2^e
            out.push_back({pow2(e) - pow2(e - 1 - p), pow2(e) + pow2(e - p), 3.0 * pow2(e - 1 - p)});
        }
        if (p >= 2) {
            // remaining bins of the binade; for e_max this run ends at G
            out.push_back({pow2(e) + pow2(e - p), pow2(e + 1) - pow2(e - p), pow2(e - p + 1)});
        }
    }
    return out;
}

}  // namespace fpent
