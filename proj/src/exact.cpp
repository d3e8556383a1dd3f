#include "mlpi/exact.hpp"

#include <ostream>

#include "mlpi/error.hpp"

namespace mlpi {

namespace {

// Below this many limbs the thread hand-off costs more than the multiply.
constexpr std::size_t kParallelSquareLimbs = 4096;

BigInt pow10(unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start) throw Error(ErrorKind::parse, "empty integer");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            throw Error(ErrorKind::parse, "invalid digit in integer: '" + s + "'");
        }
    }
    BigInt v;
    if (v.set_str(s, 10) != 0) throw Error(ErrorKind::parse, "bad integer: '" + s + "'");
    return v;
}

std::string to_decimal_string(const BigInt& v) { return v.get_str(10); }

std::size_t decimal_digit_count(const BigInt& v) {
    if (sgn(v) == 0) return 1;
    // mpz_sizeinbase may overshoot by one for base 10; check against 10^(n-1).
    std::size_t n = mpz_sizeinbase(v.get_mpz_t(), 10);
    BigInt a = ::abs(v);
    if (a < pow10(static_cast<unsigned long>(n - 1))) --n;
    return n;
}

BigInt pow2(std::uint64_t e) {
    BigInt r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

// ---------------------------------------------------------------- BigRational

BigRational::BigRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (sgn(den_) == 0) throw std::domain_error("zero denominator");
    normalize();
}

BigRational BigRational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return BigRational(parse_bigint(text));
    BigInt n = parse_bigint(text.substr(0, slash));
    BigInt d = parse_bigint(text.substr(slash + 1));
    if (sgn(d) == 0) throw Error(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
    return BigRational(std::move(n), std::move(d));
}

void BigRational::normalize() {
    if (sgn(den_) < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (sgn(num_) == 0) {
        den_ = 1;
        return;
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

BigRational BigRational::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    return BigRational(den_, num_);
}

BigRational& BigRational::operator+=(const BigRational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

BigRational& BigRational::operator-=(const BigRational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

BigRational& BigRational::operator*=(const BigRational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

BigRational& BigRational::operator/=(const BigRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    BigInt n = num_ * o.den_;
    BigInt d = den_ * o.num_;
    num_ = std::move(n);
    den_ = std::move(d);
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string BigRational::to_string() const {
    if (is_integer()) return num_.get_str(10);
    return num_.get_str(10) + "/" + den_.get_str(10);
}

std::string BigRational::to_fixed(int frac_digits) const {
    BigInt scaled = ::abs(num_) * pow10(static_cast<unsigned long>(frac_digits));
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), den_.get_mpz_t());
    std::string digits = q.get_str(10);
    if (digits.size() <= static_cast<std::size_t>(frac_digits)) {
        digits.insert(0, static_cast<std::size_t>(frac_digits) + 1 - digits.size(), '0');
    }
    std::string out = sgn(num_) < 0 ? "-" : "";
    std::size_t int_len = digits.size() - static_cast<std::size_t>(frac_digits);
    out += digits.substr(0, int_len);
    if (frac_digits > 0) out += "." + digits.substr(int_len);
    return out;
}

std::string BigRational::to_scientific(int frac_digits) const {
    if (is_zero()) return "0." + std::string(static_cast<std::size_t>(frac_digits), '0') + "e0";
    BigInt a = ::abs(num_);
    // exponent e with 10^e <= |x| < 10^(e+1)
    long e = static_cast<long>(decimal_digit_count(a)) - static_cast<long>(decimal_digit_count(den_));
    auto ge_pow = [&](long ex) {
        // |x| >= 10^ex ?
        if (ex >= 0) return a >= den_ * pow10(static_cast<unsigned long>(ex));
        return a * pow10(static_cast<unsigned long>(-ex)) >= den_;
    };
    while (!ge_pow(e)) --e;
    while (ge_pow(e + 1)) ++e;
    long shift = frac_digits - e;
    BigInt q;
    if (shift >= 0) {
        BigInt t = a * pow10(static_cast<unsigned long>(shift));
        mpz_tdiv_q(q.get_mpz_t(), t.get_mpz_t(), den_.get_mpz_t());
    } else {
        BigInt t = den_ * pow10(static_cast<unsigned long>(-shift));
        mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), t.get_mpz_t());
    }
    std::string digits = q.get_str(10);
    std::string out = sgn(num_) < 0 ? "-" : "";
    out += digits.substr(0, 1);
    if (frac_digits > 0) out += "." + digits.substr(1);
    out += "e" + std::to_string(e);
    return out;
}

double BigRational::to_double() const {
    mpq_class q(num_, den_);
    return q.get_d();
}

std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.to_string(); }

// ---------------------------------------------------------------- Gaussian integers

GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianInt gi_square(const GaussianInt& g) {
    const bool large = mpz_size(g.re.get_mpz_t()) + mpz_size(g.im.get_mpz_t()) > kParallelSquareLimbs;
    GaussianInt out;
#pragma omp parallel sections if (large)
    {
#pragma omp section
        { out.re = (g.re + g.im) * (g.re - g.im); }
#pragma omp section
        {
            out.im = g.re * g.im;
            out.im <<= 1;
        }
    }
    return out;
}

GaussianInt gi_pow(const GaussianInt& g, std::uint64_t n) {
    GaussianInt result{1, 0};
    GaussianInt base = g;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1;
        if (n > 0) base = gi_square(base);
    }
    return result;
}

namespace serial {

GaussianInt gi_square(const GaussianInt& g) {
    return {g.re * g.re - g.im * g.im, 2 * g.re * g.im};
}

GaussianInt gi_pow(const GaussianInt& g, std::uint64_t n) {
    GaussianInt result{1, 0};
    GaussianInt base = g;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1;
        if (n > 0) base = serial::gi_square(base);
    }
    return result;
}

}  // namespace serial

// ---------------------------------------------------------------- Gaussian rationals

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    BigRational n = gr_norm(b);
    if (n.is_zero()) throw std::domain_error("Gaussian division by zero");
    GaussianRational p = a * b.conj();
    return {p.re / n, p.im / n};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << "(" << z.re << ") + (" << z.im << ")i";
}

GaussianRational gr_pow(const GaussianRational& z, std::uint64_t n) {
    GaussianRational result{BigRational(1), BigRational(0)};
    GaussianRational base = z;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

BigRational gr_norm(const GaussianRational& z) { return z.re * z.re + z.im * z.im; }

GaussianRational cayley(const BigRational& u) {
    GaussianRational num{u, BigRational(1)};
    GaussianRational den{u, BigRational(-1)};
    return num / den;
}

}  // namespace mlpi
