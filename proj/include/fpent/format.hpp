#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fpent {

/// Idealized binary floating-point format with `precision` significand bits
/// (hidden bit included) and `exponent_bits` exponent bits. No zero, no
/// subnormals, no infinities: the 2^(E+p) values are the signed numbers
/// 2^e (1 + m / 2^(p-1)) for e in [e_min, e_max].
class FpFormat {
public:
    static constexpr int max_exponent_bits = 10;
    static constexpr int max_total_bits = 30;

    FpFormat(int precision, int exponent_bits);

    int precision() const noexcept { return p_; }
    int exponent_bits() const noexcept { return E_; }
    int e_min() const noexcept { return -((1 << (E_ - 1)) - 1); }
    int e_max() const noexcept { return 1 << (E_ - 1); }

    /// Number of representable values K = 2^(E+p).
    std::uint64_t size() const noexcept { return std::uint64_t{1} << (E_ + p_); }
    /// Significand steps per binade, 2^(p-1).
    std::uint64_t values_per_exponent() const noexcept { return std::uint64_t{1} << (p_ - 1); }

    /// Granular bound G = 2^(e_max+1) - 2^(e_max-p); |x| > G is overflow.
    double granular_bound() const noexcept;
    /// Smallest positive value 2^e_min; |x| <= 2^e_min is underflow.
    double underflow_bound() const noexcept;

    std::string to_string() const;

    friend bool operator==(const FpFormat&, const FpFormat&) = default;

private:
    int p_;
    int E_;
};

/// Round alpha to the nearest multiple of 2^-(p-1) in [0, 1], ties upward.
double round_p(double alpha, int precision);

struct FpValue {
    int sign = 1;                     // +1 or -1
    int exponent = 0;
    std::uint64_t mantissa_index = 0; // m * 2^(p-1), in [0, 2^(p-1))
    int precision = 1;

    double mantissa() const noexcept;
    double value() const noexcept;

    friend bool operator==(const FpValue&, const FpValue&) = default;
};

/// Encode x != 0 into the format by exponent clamping and significand
/// rounding. Overflow saturates at the largest magnitude, underflow snaps to
/// the smallest. Throws std::domain_error for x == 0 and
/// std::invalid_argument for non-finite x.
FpValue encode(double x, const FpFormat& fmt);

enum class Region { underflow, granular, overflow };
Region classify(double x, const FpFormat& fmt);

enum class BinKind { central, interior, exponent_boundary, outer_clipping };
const char* to_string(BinKind kind) noexcept;

/// Sorted view of all K representable values with their midpoint
/// quantization bins. Values and bin edges are exact dyadics computed on
/// demand, so nothing of size K is stored.
class RepresentableGrid {
public:
    explicit RepresentableGrid(const FpFormat& fmt) : fmt_(fmt) {}

    const FpFormat& format() const noexcept { return fmt_; }
    std::uint64_t size() const noexcept { return fmt_.size(); }

    FpValue at(std::uint64_t i) const;
    double value(std::uint64_t i) const;
    /// Bin edges. The outermost edges are -G and G. A point on an edge
    /// belongs to the bin farther from zero.
    double lower(std::uint64_t i) const;
    double upper(std::uint64_t i) const;
    double width(std::uint64_t i) const { return upper(i) - lower(i); }
    BinKind kind(std::uint64_t i) const;

    std::uint64_t index_of(const FpValue& v) const;
    /// Index of the bin containing x by binary search over the bin edges.
    /// Points beyond +-G land in the outermost bins. Throws for x == 0.
    /// Agrees with index_of(encode(x)) for every nonzero finite x.
    std::uint64_t locate(double x) const;

    /// Materialized values in increasing order.
    std::vector<double> values() const;

private:
    FpFormat fmt_;
};

/// Width of the bin containing x. Requires 0 < |x| <= G.
double bin_size(double x, const FpFormat& fmt);

/// Smooth surrogate |x| 2^(1-p) / sqrt(2).
double smooth_bin_size(double x, int precision);
inline double smooth_bin_size(double x, const FpFormat& fmt) { return smooth_bin_size(x, fmt.precision()); }

/// A run of consecutive positive-side bins sharing the same width.
struct WidthSegment {
    double lower;
    double upper;
    double width;
};

/// Runs of equal-width bins covering [0, G] in increasing order. The
/// negative side is the mirror image.
std::vector<WidthSegment> positive_width_segments(const FpFormat& fmt);

}  // namespace fpent
