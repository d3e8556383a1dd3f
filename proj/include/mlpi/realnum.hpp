#pragma once

// Binary fixed-point reals with a tracked absolute error bound.
//
// A FixedReal stands for every real in
//     [ (mantissa - err_ulp) * 2^-scale , (mantissa + err_ulp) * 2^-scale ].
// Each operation returns a value whose interval contains the exact result of
// the operation applied to any points of the input intervals.
//
// Per-operation error growth, in ulps of the result scale s:
//   add/sub : e_x·2^(s-sx) + e_y·2^(s-sy)            (exact, no rounding)
//   mul     : (|m_x|·e_y + |m_y|·e_x + e_x·e_y)·2^(s-sx-sy), rounded up, +1 if rounded
//   div     : (e_x·2^(s+sy-sx) + (|q|+1)·e_y) / (|m_y| - e_y), rounded up, +1 if rounded
//   sqrt    : min(e_x·2^(2s-sx) / r, sqrt(e_x·2^(2s-sx))) rounded up, +1 if inexact,
//             where r = floor(sqrt(m_x·2^(2s-sx)))
// Rounding to a coarser scale is to nearest and costs at most one ulp.

#include <cstdint>
#include <string>

#include "mlpi/exact.hpp"

namespace mlpi {

class FixedReal {
public:
    FixedReal() = default;
    FixedReal(BigInt mantissa, std::int64_t scale, BigInt err_ulp = 0);

    static FixedReal from_integer(const BigInt& v, std::int64_t scale);
    /// Nearest fixed-point value; err_ulp is 0 when exactly representable, else 1.
    static FixedReal from_rational(const BigRational& v, std::int64_t scale);

    const BigInt& mantissa() const noexcept { return mantissa_; }
    std::int64_t scale() const noexcept { return scale_; }
    const BigInt& err_ulp() const noexcept { return err_; }

    BigRational center() const;
    BigRational lower() const;
    BigRational upper() const;
    BigRational error_bound() const;  // err_ulp · 2^-scale
    bool contains(const BigRational& v) const;
    bool is_exact() const { return sgn(err_) == 0; }

    /// Interval lies strictly above zero / strictly below zero.
    bool is_positive() const { return mantissa_ - err_ > 0; }
    bool is_negative() const { return mantissa_ + err_ < 0; }

    /// Same value at another scale (exact when refining).
    FixedReal rescaled(std::int64_t new_scale) const;

    FixedReal operator-() const { return FixedReal(-mantissa_, scale_, err_); }
    FixedReal abs() const { return FixedReal(::abs(mantissa_), scale_, err_); }

    /// x · 2^e, exact.
    FixedReal ldexp(std::int64_t e) const;
    /// x · n, exact.
    FixedReal mul_int(const BigInt& n) const;
    /// x / n for n != 0, rounded to nearest.
    FixedReal div_int(const BigInt& n) const;

    /// Approximate log10 of |center|; -inf for zero.
    double log10_abs() const;

private:
    BigInt mantissa_{0};
    std::int64_t scale_ = 0;
    BigInt err_{0};
};

FixedReal fr_add(const FixedReal& x, const FixedReal& y);
FixedReal fr_sub(const FixedReal& x, const FixedReal& y);
FixedReal fr_mul(const FixedReal& x, const FixedReal& y, std::int64_t scale);
FixedReal fr_mul(const FixedReal& x, const FixedReal& y);  // at max(scale_x, scale_y)
FixedReal fr_div(const FixedReal& x, const FixedReal& y, std::int64_t scale);
FixedReal fr_div(const FixedReal& x, const FixedReal& y);  // at max(scale_x, scale_y)
FixedReal fr_sqrt(const FixedReal& x, std::int64_t target_scale);

inline FixedReal operator+(const FixedReal& x, const FixedReal& y) { return fr_add(x, y); }
inline FixedReal operator-(const FixedReal& x, const FixedReal& y) { return fr_sub(x, y); }
inline FixedReal operator*(const FixedReal& x, const FixedReal& y) { return fr_mul(x, y); }
inline FixedReal operator/(const FixedReal& x, const FixedReal& y) { return fr_div(x, y); }

struct DecimalString {
    std::string text;  // truncated toward zero, `digits` digits after the point
    bool valid = false;  // every printed digit is certain
};

DecimalString fr_to_decimal(const FixedReal& x, int digits);

/// Largest D <= max_digits for which fr_to_decimal(x, D) is valid, or -1.
int fr_valid_digits(const FixedReal& x, int max_digits);

/// Bits needed for `digits` decimal digits: ceil(digits · log2 10).
std::int64_t bits_for_digits(std::int64_t digits);

// Integer helpers shared with the series kernels.
BigInt shift_floor(const BigInt& n, std::int64_t k);  // floor(n · 2^k)
BigInt shift_ceil(const BigInt& n, std::int64_t k);   // ceil(n · 2^k)
double log10_abs(const BigInt& n);

}  // namespace mlpi
