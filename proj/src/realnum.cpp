#include "mlpi/realnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlpi/error.hpp"

namespace mlpi {

namespace {

struct Rounded {
    BigInt value;
    bool exact;
};

// round(n / 2^k) to nearest (ties away from -inf), k >= 0.
Rounded round_shift(const BigInt& n, std::int64_t k) {
    if (k <= 0) return {shift_floor(n, -k), true};
    auto bits = static_cast<mp_bitcnt_t>(k);
    bool exact = mpz_scan1(n.get_mpz_t(), 0) >= bits || sgn(n) == 0;
    BigInt t = n;
    BigInt half = pow2(static_cast<std::uint64_t>(k - 1));
    t += half;
    BigInt q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), t.get_mpz_t(), bits);
    return {std::move(q), exact};
}

// round(n / d) to nearest, d != 0.
Rounded round_div(const BigInt& n, const BigInt& d) {
    BigInt an = ::abs(n);
    BigInt ad = ::abs(d);
    BigInt q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), an.get_mpz_t(), ad.get_mpz_t());
    bool exact = sgn(r) == 0;
    if (2 * r >= ad) q += 1;
    if ((sgn(n) < 0) != (sgn(d) < 0)) q = -q;
    return {std::move(q), exact};
}

BigInt ceil_div(const BigInt& n, const BigInt& d) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

BigInt ceil_sqrt(const BigInt& n) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) r += 1;
    return r;
}

std::string truncated_decimal(const BigInt& m, std::int64_t scale, int digits) {
    BigInt a = ::abs(m);
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    BigInt t = shift_floor(a * p10, -scale);
    std::string s = t.get_str(10);
    auto d = static_cast<std::size_t>(digits);
    if (s.size() <= d) s.insert(0, d + 1 - s.size(), '0');
    std::size_t int_len = s.size() - d;
    std::string out = (sgn(m) < 0 && sgn(t) != 0) ? "-" : "";
    out += s.substr(0, int_len);
    if (digits > 0) out += "." + s.substr(int_len);
    return out;
}

}  // namespace

BigInt shift_floor(const BigInt& n, std::int64_t k) {
    BigInt r;
    if (k >= 0) {
        mpz_mul_2exp(r.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpz_fdiv_q_2exp(r.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    }
    return r;
}

BigInt shift_ceil(const BigInt& n, std::int64_t k) {
    BigInt r;
    if (k >= 0) {
        mpz_mul_2exp(r.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpz_cdiv_q_2exp(r.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    }
    return r;
}

double log10_abs(const BigInt& n) {
    if (sgn(n) == 0) return -std::numeric_limits<double>::infinity();
    long exp = 0;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log10(std::fabs(d)) + static_cast<double>(exp) * std::log10(2.0);
}

std::int64_t bits_for_digits(std::int64_t digits) {
    return static_cast<std::int64_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623));
}

// ---------------------------------------------------------------- FixedReal

FixedReal::FixedReal(BigInt mantissa, std::int64_t scale, BigInt err_ulp)
    : mantissa_(std::move(mantissa)), scale_(scale), err_(std::move(err_ulp)) {
    if (scale_ < 0) throw std::invalid_argument("FixedReal scale must be >= 0");
    if (sgn(err_) < 0) throw std::invalid_argument("FixedReal error must be >= 0");
}

FixedReal FixedReal::from_integer(const BigInt& v, std::int64_t scale) {
    return FixedReal(shift_floor(v, scale), scale);
}

FixedReal FixedReal::from_rational(const BigRational& v, std::int64_t scale) {
    Rounded r = round_div(shift_floor(v.num(), scale), v.den());
    return FixedReal(std::move(r.value), scale, r.exact ? 0 : 1);
}

BigRational FixedReal::center() const { return BigRational(mantissa_, pow2(static_cast<std::uint64_t>(scale_))); }
BigRational FixedReal::lower() const { return BigRational(mantissa_ - err_, pow2(static_cast<std::uint64_t>(scale_))); }
BigRational FixedReal::upper() const { return BigRational(mantissa_ + err_, pow2(static_cast<std::uint64_t>(scale_))); }
BigRational FixedReal::error_bound() const { return BigRational(err_, pow2(static_cast<std::uint64_t>(scale_))); }

bool FixedReal::contains(const BigRational& v) const { return lower() <= v && v <= upper(); }

FixedReal FixedReal::rescaled(std::int64_t new_scale) const {
    if (new_scale >= scale_) {
        std::int64_t d = new_scale - scale_;
        return FixedReal(shift_floor(mantissa_, d), new_scale, shift_floor(err_, d));
    }
    std::int64_t d = scale_ - new_scale;
    Rounded r = round_shift(mantissa_, d);
    BigInt e = shift_ceil(err_, -d);
    if (!r.exact) e += 1;
    return FixedReal(std::move(r.value), new_scale, std::move(e));
}

FixedReal FixedReal::ldexp(std::int64_t e) const {
    std::int64_t s = scale_ - e;
    if (s >= 0) return FixedReal(mantissa_, s, err_);
    return FixedReal(shift_floor(mantissa_, -s), 0, shift_floor(err_, -s));
}

FixedReal FixedReal::mul_int(const BigInt& n) const {
    return FixedReal(mantissa_ * n, scale_, err_ * ::abs(n));
}

FixedReal FixedReal::div_int(const BigInt& n) const {
    if (sgn(n) == 0) throw Error(ErrorKind::divisor_straddles_zero, "division by integer zero");
    Rounded r = round_div(mantissa_, n);
    BigInt e = ceil_div(err_, ::abs(n));
    if (!r.exact) e += 1;
    return FixedReal(std::move(r.value), scale_, std::move(e));
}

double FixedReal::log10_abs() const {
    return mlpi::log10_abs(mantissa_) - static_cast<double>(scale_) * std::log10(2.0);
}

// ---------------------------------------------------------------- arithmetic

FixedReal fr_add(const FixedReal& x, const FixedReal& y) {
    std::int64_t s = std::max(x.scale(), y.scale());
    BigInt m = shift_floor(x.mantissa(), s - x.scale()) + shift_floor(y.mantissa(), s - y.scale());
    BigInt e = shift_floor(x.err_ulp(), s - x.scale()) + shift_floor(y.err_ulp(), s - y.scale());
    return FixedReal(std::move(m), s, std::move(e));
}

FixedReal fr_sub(const FixedReal& x, const FixedReal& y) { return fr_add(x, -y); }

FixedReal fr_mul(const FixedReal& x, const FixedReal& y, std::int64_t scale) {
    std::int64_t shift = x.scale() + y.scale() - scale;
    Rounded r = round_shift(x.mantissa() * y.mantissa(), shift);
    BigInt prop = ::abs(x.mantissa()) * y.err_ulp() + ::abs(y.mantissa()) * x.err_ulp() +
                  x.err_ulp() * y.err_ulp();
    BigInt e = shift_ceil(prop, -shift);
    if (!r.exact) e += 1;
    return FixedReal(std::move(r.value), scale, std::move(e));
}

FixedReal fr_mul(const FixedReal& x, const FixedReal& y) {
    return fr_mul(x, y, std::max(x.scale(), y.scale()));
}

FixedReal fr_div(const FixedReal& x, const FixedReal& y, std::int64_t scale) {
    BigInt ylow = ::abs(y.mantissa()) - y.err_ulp();
    if (sgn(ylow) <= 0) {
        throw Error(ErrorKind::divisor_straddles_zero, "divisor interval contains zero");
    }
    std::int64_t e = scale + y.scale() - x.scale();
    Rounded q = e >= 0 ? round_div(shift_floor(x.mantissa(), e), y.mantissa())
                       : round_div(x.mantissa(), shift_floor(y.mantissa(), -e));
    BigInt num = shift_ceil(x.err_ulp(), e) + (::abs(q.value) + 1) * y.err_ulp();
    BigInt err = ceil_div(num, ylow);
    if (!q.exact) err += 1;
    return FixedReal(std::move(q.value), scale, std::move(err));
}

FixedReal fr_div(const FixedReal& x, const FixedReal& y) {
    return fr_div(x, y, std::max(x.scale(), y.scale()));
}

FixedReal fr_sqrt(const FixedReal& x, std::int64_t target_scale) {
    if (sgn(x.mantissa()) < 0) {
        throw Error(ErrorKind::negative_operand, "square root of a negative interval");
    }
    if (2 * target_scale < x.scale()) {
        return fr_sqrt(x, (x.scale() + 1) / 2).rescaled(target_scale);
    }
    std::int64_t shift = 2 * target_scale - x.scale();
    BigInt n = shift_floor(x.mantissa(), shift);
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    bool exact = r * r == n;
    BigInt e_in = shift_floor(x.err_ulp(), shift);
    BigInt prop = ceil_sqrt(e_in);
    if (sgn(r) > 0) prop = std::min(prop, BigInt(ceil_div(e_in, r)));
    if (!exact) prop += 1;
    return FixedReal(std::move(r), target_scale, std::move(prop));
}

DecimalString fr_to_decimal(const FixedReal& x, int digits) {
    if (digits < 0) throw std::invalid_argument("digits must be >= 0");
    DecimalString out;
    out.text = truncated_decimal(x.mantissa(), x.scale(), digits);
    if (x.is_exact()) {
        out.valid = true;
        return out;
    }
    std::string lo = truncated_decimal(x.mantissa() - x.err_ulp(), x.scale(), digits);
    std::string hi = truncated_decimal(x.mantissa() + x.err_ulp(), x.scale(), digits);
    out.valid = lo == hi && lo == out.text;
    return out;
}

int fr_valid_digits(const FixedReal& x, int max_digits) {
    if (!fr_to_decimal(x, 0).valid) return -1;
    int lo = 0;
    int hi = max_digits;
    while (lo < hi) {
        int mid = lo + (hi - lo + 1) / 2;
        if (fr_to_decimal(x, mid).valid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

}  // namespace mlpi
