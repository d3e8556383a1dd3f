#pragma once

// Exact integer, rational and Gaussian arithmetic on top of GMP.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mlpi {

using BigInt = mpz_class;

BigInt parse_bigint(std::string_view text);  // decimal, optional leading '-'
std::string to_decimal_string(const BigInt& v);
std::size_t decimal_digit_count(const BigInt& v);  // digits of |v|, 1 for zero
BigInt pow2(std::uint64_t e);

/// Reduced rational number. The denominator is always positive and
/// coprime to the numerator; zero is stored as 0/1.
class BigRational {
public:
    BigRational() : num_(0), den_(1) {}
    BigRational(long v) : num_(v), den_(1) {}  // NOLINT(implicit)
    BigRational(BigInt num) : num_(std::move(num)), den_(1) {}  // NOLINT(implicit)
    BigRational(BigInt num, BigInt den);
    BigRational(long num, long den) : BigRational(BigInt(num), BigInt(den)) {}

    /// Accepts "n", "-n" or "n/d".
    static BigRational parse(std::string_view text);

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return sgn(num_) == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return sgn(num_); }

    BigRational abs() const { return BigRational(::abs(num_), den_, raw_tag{}); }
    BigRational reciprocal() const;
    BigRational operator-() const { return BigRational(-num_, den_, raw_tag{}); }

    BigRational& operator+=(const BigRational& o);
    BigRational& operator-=(const BigRational& o);
    BigRational& operator*=(const BigRational& o);
    BigRational& operator/=(const BigRational& o);

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

    /// "n" for integers, "n/d" otherwise.
    std::string to_string() const;

    /// Truncated decimal expansion with `frac_digits` digits after the point.
    std::string to_fixed(int frac_digits) const;

    /// Truncated scientific form "d.ddd…e<exp>" with `frac_digits` mantissa digits.
    std::string to_scientific(int frac_digits) const;

    double to_double() const;

private:
    struct raw_tag {};
    BigRational(BigInt num, BigInt den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    BigInt num_;
    BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const BigRational& r);

/// Gaussian integer re + im·i.
struct GaussianInt {
    BigInt re{0};
    BigInt im{0};

    GaussianInt conj() const { return {re, -im}; }
    BigInt norm() const { return re * re + im * im; }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b);
    friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// (re + im·i)^2 = (re+im)(re−im) + 2·re·im·i. The two products are
/// independent and run as parallel sections when the operands are large.
GaussianInt gi_square(const GaussianInt& g);

/// g^n by square-and-multiply.
GaussianInt gi_pow(const GaussianInt& g, std::uint64_t n);

/// Gaussian rational re + im·i with exact rational parts.
struct GaussianRational {
    BigRational re;
    BigRational im;

    GaussianRational() = default;
    GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianRational(const GaussianInt& g) : re(g.re), im(g.im) {}

    static GaussianRational i_unit() { return {BigRational(0), BigRational(1)}; }

    GaussianRational conj() const { return {re, -im}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
    // Multiplies by the conjugate and divides by the norm.
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// z^n by square-and-multiply; z^0 = 1.
GaussianRational gr_pow(const GaussianRational& z, std::uint64_t n);

/// re^2 + im^2.
BigRational gr_norm(const GaussianRational& z);

/// (u + i)/(u − i) for rational u.
GaussianRational cayley(const BigRational& u);

namespace serial {
GaussianInt gi_square(const GaussianInt& g);
GaussianInt gi_pow(const GaussianInt& g, std::uint64_t n);
}  // namespace serial

}  // namespace mlpi
