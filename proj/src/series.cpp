#include "mlpi/series.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "mlpi/error.hpp"
#include "mlpi/radicals.hpp"

namespace mlpi {

namespace {

constexpr std::int64_t kGuardBits = 32;

void check_terms(int terms) {
    if (terms < 1) throw Error(ErrorKind::usage, "series needs at least one term");
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

// ceil(a · b / 2^s) for non-negative a, b.
BigInt mul_up(const BigInt& a, const BigInt& b, std::int64_t s) { return shift_ceil(a * b, -s); }

// Upper bound, in ulps at scale s, on the eq12 tail after m terms:
//   sum_{j>m} 2|t|^(2j-1)/(2j-1) <= 2 rho^m sqrt(rho) / ((2m+1)(1 - rho)).
class Eq12Tail {
public:
    Eq12Tail(BigInt rho_up, std::int64_t scale)
        : rho_up_(std::move(rho_up)), scale_(scale), one_(pow2(static_cast<std::uint64_t>(scale))) {
        if (rho_up_ >= one_) throw Error(ErrorKind::precision_exhausted, "series ratio bound not below 1");
        sqrt_rho_up_ = ceil_sqrt(rho_up_ * one_);
        pow_up_ = one_;
    }

    // Advances to m terms (call with m = 1, 2, ...).
    BigInt next(int m) {
        pow_up_ = mul_up(pow_up_, rho_up_, scale_);
        BigInt lead = mul_up(pow_up_, sqrt_rho_up_, scale_);
        return ceil_div(2 * lead * one_, BigInt(2 * m + 1) * (one_ - rho_up_));
    }

private:
    BigInt rho_up_;
    std::int64_t scale_;
    BigInt one_;
    BigInt sqrt_rho_up_;
    BigInt pow_up_;
};

FixedReal widen(const FixedReal& v, const BigInt& extra_ulps) {
    return FixedReal(v.mantissa(), v.scale(), v.err_ulp() + extra_ulps);
}

double complex_log10(const ComplexFixed& z) {
    double a = z.re.log10_abs();
    double b = z.im.log10_abs();
    double hi = std::max(a, b);
    if (!std::isfinite(hi)) return hi;
    return hi + 0.5 * std::log10(1.0 + std::pow(10.0, 2.0 * (std::min(a, b) - hi)));
}

struct Eq12Setup {
    ComplexFixed t;
    BigInt rho_up;
};

// t = a(a - 2bi) / (a^2 + 4b^2) for x = a/b.
Eq12Setup eq12_setup_rational(const BigRational& x, std::int64_t scale) {
    if (x.is_zero()) throw Error(ErrorKind::zero_argument, "eq12 series needs x != 0");
    const BigInt& a = x.num();
    const BigInt& b = x.den();
    BigInt norm = a * a + 4 * b * b;
    Eq12Setup s;
    s.t.re = FixedReal::from_rational(BigRational(a * a, norm), scale);
    s.t.im = FixedReal::from_rational(BigRational(-2 * a * b, norm), scale);
    s.rho_up = ceil_div(shift_floor(a * a, scale), norm);
    return s;
}

// t = (1 - 2ic) / (1 + 4c^2) for x = 1/c with c an interval.
Eq12Setup eq12_setup_cot(const FixedReal& c, std::int64_t scale) {
    FixedReal cs = c.rescaled(scale);
    FixedReal denom = fr_add(FixedReal::from_integer(1, scale), fr_mul(cs, cs, scale).mul_int(4));
    Eq12Setup s;
    s.t.re = fr_div(FixedReal::from_integer(1, scale), denom, scale);
    s.t.im = fr_div(cs.mul_int(-2), denom, scale);
    BigInt denom_lo = denom.mantissa() - denom.err_ulp();
    if (sgn(denom_lo) <= 0) throw Error(ErrorKind::precision_exhausted, "cotangent too imprecise");
    s.rho_up = ceil_div(pow2(static_cast<std::uint64_t>(2 * scale)), denom_lo);
    return s;
}

struct Eq12Run {
    std::vector<FixedReal> partial;  // arctan partial sums with tail bounds
    double per_term_log10 = 0.0;
};

Eq12Run eq12_kernel(const Eq12Setup& setup, int max_terms, std::int64_t scale) {
    check_terms(max_terms);
    Eq12Run run;
    run.partial.reserve(static_cast<std::size_t>(max_terms));
    Eq12Tail tail(setup.rho_up, scale);
    const ComplexFixed r = cmul(setup.t, setup.t, scale);
    ComplexFixed w = setup.t;
    FixedReal sum = FixedReal::from_integer(0, scale);
    double prev_log = 0.0;
    double last_log = 0.0;
    for (int m = 1; m <= max_terms; ++m) {
        const BigInt odd = 2 * m - 1;
        sum = fr_add(sum, w.im.div_int(odd));
        run.partial.push_back(widen(sum.mul_int(-2), tail.next(m)));
        prev_log = last_log;
        last_log = complex_log10(w) - std::log10(static_cast<double>(2 * m - 1));
        if (m < max_terms) w = cmul(w, r, scale);
    }
    run.per_term_log10 = max_terms >= 2
                             ? prev_log - last_log
                             : -std::log10(BigRational(setup.rho_up, pow2(static_cast<std::uint64_t>(scale))).to_double());
    return run;
}

// Internal precision needed so that multiplying by alpha keeps `scale` bits.
std::int64_t coefficient_bits(const MachinFormula& f) {
    std::int64_t bits = 0;
    for (const auto& t : f.terms) {
        BigInt a = ::abs(t.alpha.num()) + 1;
        bits = std::max<std::int64_t>(bits, static_cast<std::int64_t>(mpz_sizeinbase(a.get_mpz_t(), 2)));
    }
    return bits + 4;  // 4·sum and term count
}

FixedReal scale_by_alpha(const FixedReal& v, const BigRational& alpha, std::int64_t scale) {
    if (alpha.is_integer()) return v.mul_int(alpha.num());
    return fr_mul(v, FixedReal::from_rational(alpha, scale), scale);
}

std::vector<FixedReal> combine_terms(const MachinFormula& f,
                                     const std::vector<std::vector<FixedReal>>& per_term, int max_terms,
                                     std::int64_t inner, std::int64_t scale) {
    std::vector<FixedReal> out;
    out.reserve(static_cast<std::size_t>(max_terms));
    for (int m = 0; m < max_terms; ++m) {
        FixedReal acc = FixedReal::from_integer(0, inner);
        for (std::size_t j = 0; j < f.terms.size(); ++j) {
            acc = fr_add(acc, scale_by_alpha(per_term[j][static_cast<std::size_t>(m)], f.terms[j].alpha, inner));
        }
        out.push_back(acc.mul_int(4).rescaled(scale));
    }
    return out;
}

void check_formula(const MachinFormula& f) {
    if (f.terms.empty()) throw Error(ErrorKind::usage, "formula has no terms");
    for (const auto& t : f.terms) {
        if (t.beta.is_zero()) throw Error(ErrorKind::usage, "cotangent argument beta must be nonzero");
    }
}

}  // namespace

const char* to_string(Method m) noexcept {
    switch (m) {
    case Method::gregory: return "gregory";
    case Method::euler: return "euler";
    case Method::eq12: return "eq12";
    }
    return "?";
}

ComplexFixed cmul(const ComplexFixed& a, const ComplexFixed& b, std::int64_t scale) {
    return {fr_sub(fr_mul(a.re, b.re, scale), fr_mul(a.im, b.im, scale)),
            fr_add(fr_mul(a.re, b.im, scale), fr_mul(a.im, b.re, scale))};
}

double formula_rate(const MachinFormula& f) {
    double rate = std::numeric_limits<double>::infinity();
    for (const auto& t : f.terms) {
        const BigInt& p = t.beta.num();
        const BigInt& q = t.beta.den();
        // log10((q^2 + 4p^2) / q^2)
        rate = std::min(rate, log10_abs(BigInt(q * q + 4 * p * p)) - 2.0 * log10_abs(q));
    }
    return rate;
}

SeriesResult arctan_gregory(const BigRational& x, int terms, std::int64_t scale) {
    check_terms(terms);
    if (x.abs() >= BigRational(1)) {
        throw Error(ErrorKind::divergent_argument, "Gregory series needs |x| < 1, got " + x.to_string());
    }
    SeriesResult res;
    res.method = Method::gregory;
    res.terms_used = terms;
    if (x.is_zero()) {
        res.value = FixedReal::from_integer(0, scale);
        return res;
    }
    const std::int64_t s = scale + kGuardBits;
    const FixedReal xf = FixedReal::from_rational(x, s);
    const FixedReal x2 = fr_mul(xf, xf, s);
    FixedReal p = xf;
    FixedReal sum = FixedReal::from_integer(0, s);
    double prev_log = 0.0;
    double last_log = 0.0;
    for (int n = 1; n <= terms; ++n) {
        FixedReal term = p.div_int(2 * n - 1);
        sum = (n % 2 == 1) ? fr_add(sum, term) : fr_sub(sum, term);
        prev_log = last_log;
        last_log = term.log10_abs();
        if (n < terms) p = fr_mul(p, x2, s);
    }
    // Alternating with decreasing terms: |tail| <= |x|^(2N+1) / (2N+1).
    BigInt x_up = ceil_div(shift_floor(::abs(x.num()), s), x.den());
    BigInt pw = pow2(static_cast<std::uint64_t>(s));
    for (int j = 0; j < 2 * terms + 1; ++j) pw = mul_up(pw, x_up, s);
    BigInt tail = ceil_div(pw, BigInt(2 * terms + 1));
    res.value = widen(sum, tail).rescaled(scale);
    res.per_term_log10 = terms >= 2 ? prev_log - last_log : -2.0 * std::log10(std::fabs(x.to_double()));
    return res;
}

SeriesResult arctan_euler(const BigRational& x, int terms, std::int64_t scale) {
    check_terms(terms);
    SeriesResult res;
    res.method = Method::euler;
    res.terms_used = terms;
    if (x.is_zero()) {
        res.value = FixedReal::from_integer(0, scale);
        return res;
    }
    const std::int64_t s = scale + kGuardBits;
    const BigRational one_plus = BigRational(1) + x * x;
    const FixedReal y = FixedReal::from_rational(x * x / one_plus, s);
    FixedReal term = FixedReal::from_rational(x / one_plus, s);
    FixedReal sum = FixedReal::from_integer(0, s);
    double prev_log = 0.0;
    double last_log = 0.0;
    for (int n = 0; n < terms; ++n) {
        sum = fr_add(sum, term);
        prev_log = last_log;
        last_log = term.log10_abs();
        // T_{n+1} = T_n · y · (2n+2)/(2n+3)
        term = fr_mul(term, y, s).mul_int(2 * n + 2).div_int(2 * n + 3);
    }
    // Terms share a sign and shrink by less than y: tail <= |T_N| (1 + x^2).
    BigInt t_up = ::abs(term.mantissa()) + term.err_ulp();
    BigInt factor_up = ceil_div(shift_floor(one_plus.num(), s), one_plus.den());
    res.value = widen(sum, mul_up(t_up, factor_up, s)).rescaled(scale);
    res.per_term_log10 = terms >= 2 ? prev_log - last_log : -std::log10((x * x / one_plus).to_double());
    return res;
}

std::vector<FixedReal> arctan_eq12_partial_sums(const BigRational& x, int max_terms, std::int64_t scale) {
    const std::int64_t s = scale + kGuardBits;
    Eq12Run run = eq12_kernel(eq12_setup_rational(x, s), max_terms, s);
    for (auto& v : run.partial) v = v.rescaled(scale);
    return run.partial;
}

SeriesResult arctan_eq12(const BigRational& x, int terms, std::int64_t scale) {
    const std::int64_t s = scale + kGuardBits;
    Eq12Run run = eq12_kernel(eq12_setup_rational(x, s), terms, s);
    SeriesResult res;
    res.method = Method::eq12;
    res.terms_used = terms;
    res.value = run.partial.back().rescaled(scale);
    res.per_term_log10 = run.per_term_log10;
    return res;
}

std::vector<FixedReal> pi_partial_sums(const MachinFormula& f, int max_terms, std::int64_t scale) {
    check_formula(f);
    check_terms(max_terms);
    const std::int64_t inner = scale + coefficient_bits(f) + kGuardBits;
    const auto n = static_cast<std::int64_t>(f.terms.size());
    std::vector<std::vector<FixedReal>> per_term(f.terms.size());
    std::vector<std::exception_ptr> failures(f.terms.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t j = 0; j < n; ++j) {
        auto idx = static_cast<std::size_t>(j);
        try {
            per_term[idx] = eq12_kernel(eq12_setup_rational(f.terms[idx].beta.reciprocal(), inner),
                                        max_terms, inner)
                                .partial;
        } catch (...) {
            failures[idx] = std::current_exception();
        }
    }
    for (auto& e : failures) {
        if (e) std::rethrow_exception(e);
    }
    return combine_terms(f, per_term, max_terms, inner, scale);
}

SeriesResult pi_from_formula(const MachinFormula& f, int terms, std::int64_t scale) {
    std::vector<FixedReal> sums = pi_partial_sums(f, terms, scale);
    SeriesResult res;
    res.method = Method::eq12;
    res.terms_used = terms;
    res.value = sums.back();
    if (terms >= 2) {
        // digits gained by the last term, capped by what the scale can show
        FixedReal step = fr_sub(sums[sums.size() - 1], sums[sums.size() - 2]);
        FixedReal prev = terms >= 3 ? fr_sub(sums[sums.size() - 2], sums[sums.size() - 3]) : step;
        res.per_term_log10 = terms >= 3 ? prev.log10_abs() - step.log10_abs() : formula_rate(f);
    } else {
        res.per_term_log10 = formula_rate(f);
    }
    return res;
}

std::vector<FixedReal> pi_eq18_partial_sums(int k, int max_terms, std::int64_t scale) {
    if (k < 2) throw Error(ErrorKind::usage, "eq18 needs k >= 2");
    check_terms(max_terms);
    // c_k carries about 3k bits of amplified radical error; the result is
    // multiplied by 2^(k+1).
    const std::int64_t inner = scale + 4 * static_cast<std::int64_t>(k) + 64 + kGuardBits;
    RadicalState st = eval_radicals_at_scale(k, inner + 2 * static_cast<std::int64_t>(k));
    Eq12Run run = eq12_kernel(eq12_setup_cot(st.c_k, inner), max_terms, inner);
    std::vector<FixedReal> out;
    out.reserve(run.partial.size());
    for (const auto& v : run.partial) out.push_back(v.ldexp(k + 1).rescaled(scale));
    return out;
}

SeriesResult pi_eq18(int k, int terms, std::int64_t scale) {
    std::vector<FixedReal> sums = pi_eq18_partial_sums(k, terms, scale);
    SeriesResult res;
    res.method = Method::eq12;
    res.terms_used = terms;
    res.value = sums.back();
    if (terms >= 3) {
        res.per_term_log10 = fr_sub(sums[sums.size() - 2], sums[sums.size() - 3]).log10_abs() -
                             fr_sub(sums[sums.size() - 1], sums[sums.size() - 2]).log10_abs();
    } else {
        RadicalState st = eval_radicals_at_scale(k, 64 + 4 * k);
        double c = st.c_k.center().to_double();
        res.per_term_log10 = std::log10(1.0 + 4.0 * c * c);
    }
    return res;
}

namespace serial {

SeriesResult arctan_eq12(const BigRational& x, int terms, std::int64_t scale) {
    check_terms(terms);
    const std::int64_t s = scale + kGuardBits;
    Eq12Setup setup = eq12_setup_rational(x, s);
    const ComplexFixed& t = setup.t;
    const ComplexFixed tc{t.re, -t.im};
    const ComplexFixed r = cmul(t, t, s);
    const ComplexFixed rc = cmul(tc, tc, s);
    ComplexFixed wp = t;
    ComplexFixed wm = tc;
    ComplexFixed sum{FixedReal::from_integer(0, s), FixedReal::from_integer(0, s)};
    Eq12Tail tail(setup.rho_up, s);
    BigInt tail_ulps;
    double prev_log = 0.0;
    double last_log = 0.0;
    for (int m = 1; m <= terms; ++m) {
        const BigInt odd = 2 * m - 1;
        sum.re = fr_add(sum.re, fr_sub(wp.re, wm.re).div_int(odd));
        sum.im = fr_add(sum.im, fr_sub(wp.im, wm.im).div_int(odd));
        tail_ulps = tail.next(m);
        prev_log = last_log;
        last_log = complex_log10(wp) - std::log10(static_cast<double>(2 * m - 1));
        if (m < terms) {
            wp = cmul(wp, r, s);
            wm = cmul(wm, rc, s);
        }
    }
    // i · (re + i·im) = -im + i·re
    const FixedReal& residue = sum.re;
    if (::abs(residue.mantissa()) > residue.err_ulp()) {
        throw std::logic_error("eq12 imaginary residue exceeds its error bound");
    }
    SeriesResult res;
    res.method = Method::eq12;
    res.terms_used = terms;
    res.value = widen(-sum.im, tail_ulps).rescaled(scale);
    res.per_term_log10 = terms >= 2 ? prev_log - last_log : -std::log10(BigRational(setup.rho_up, pow2(static_cast<std::uint64_t>(s))).to_double());
    return res;
}

std::vector<FixedReal> pi_partial_sums(const MachinFormula& f, int max_terms, std::int64_t scale) {
    check_formula(f);
    check_terms(max_terms);
    const std::int64_t inner = scale + coefficient_bits(f) + kGuardBits;
    std::vector<std::vector<FixedReal>> per_term;
    per_term.reserve(f.terms.size());
    for (const auto& t : f.terms) {
        per_term.push_back(eq12_kernel(eq12_setup_rational(t.beta.reciprocal(), inner), max_terms, inner).partial);
    }
    return combine_terms(f, per_term, max_terms, inner, scale);
}

}  // namespace serial

}  // namespace mlpi
