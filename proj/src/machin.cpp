#include "mlpi/machin.hpp"

#include <string>

#include "mlpi/error.hpp"

namespace mlpi {

namespace {

GaussianInt gaussian_of(const BigRational& beta) { return {beta.num(), beta.den()}; }

std::uint64_t exponent_of(int k) {
    if (k < 1 || k > 64) throw Error(ErrorKind::usage, "k must be in [1, 64]");
    return std::uint64_t{1} << (k - 1);
}

BigRational second_term_from_power(const GaussianInt& p) {
    BigInt num = p.re + p.im;
    BigInt den = p.re - p.im;
    if (sgn(den) == 0) {
        throw Error(ErrorKind::degenerate_second_term,
                    "first term alone equals pi/4; no second term is needed");
    }
    if (sgn(num) == 0) {
        throw Error(ErrorKind::degenerate_second_term,
                    "second term would need arctan(1/0); no finite cotangent argument exists");
    }
    return BigRational(std::move(num), std::move(den));
}

BigRational second_term_direct(const GaussianRational& z_pow) {
    const GaussianRational i = GaussianRational::i_unit();
    if (z_pow == i) {
        throw Error(ErrorKind::degenerate_second_term,
                    "first term alone equals pi/4; no second term is needed");
    }
    GaussianRational u2 = GaussianRational{BigRational(2), BigRational(0)} / (z_pow - i) - i;
    if (!u2.im.is_zero()) {
        throw std::logic_error("second-term solve produced a non-real value");
    }
    if (u2.re.is_zero()) {
        throw Error(ErrorKind::degenerate_second_term,
                    "second term would need arctan(1/0); no finite cotangent argument exists");
    }
    return u2.re;
}

struct SplitAlpha {
    std::uint64_t magnitude;
    bool negative;
};

SplitAlpha split_alpha(const BigRational& alpha) {
    if (!alpha.is_integer()) {
        throw Error(ErrorKind::not_exactly_verifiable,
                    "coefficient " + alpha.to_string() + " is not an integer");
    }
    BigInt a = ::abs(alpha.num());
    if (!a.fits_ulong_p()) throw Error(ErrorKind::not_exactly_verifiable, "coefficient too large");
    return {static_cast<std::uint64_t>(a.get_ui()), alpha.sign() < 0};
}

void check_betas(const MachinFormula& f) {
    for (const auto& t : f.terms) {
        if (t.beta.is_zero()) throw Error(ErrorKind::usage, "cotangent argument beta must be nonzero");
    }
}

}  // namespace

MachinFormula MachinFormula::two_term(const BigRational& u1, int k, const BigRational& u2) {
    MachinFormula f;
    f.terms.push_back({BigRational(BigInt(static_cast<unsigned long>(exponent_of(k)))), u1});
    f.terms.push_back({BigRational(1), u2});
    return f;
}

BigRational solve_u2(const BigRational& u1, int k) {
    if (u1.sign() <= 0) throw Error(ErrorKind::usage, "u1 must be positive");
    return solve_second_term(exponent_of(k), u1);
}

BigRational solve_u2_direct(const BigRational& u1, int k) {
    if (u1.sign() <= 0) throw Error(ErrorKind::usage, "u1 must be positive");
    return solve_second_term_direct(exponent_of(k), u1);
}

BigRational solve_second_term(std::uint64_t alpha1, const BigRational& beta1) {
    if (alpha1 < 1) throw Error(ErrorKind::usage, "alpha1 must be >= 1");
    if (beta1.is_zero()) throw Error(ErrorKind::usage, "beta1 must be nonzero");
    return second_term_from_power(gi_pow(gaussian_of(beta1), alpha1));
}

BigRational solve_second_term_direct(std::uint64_t alpha1, const BigRational& beta1) {
    if (alpha1 < 1) throw Error(ErrorKind::usage, "alpha1 must be >= 1");
    if (beta1.is_zero()) throw Error(ErrorKind::usage, "beta1 must be nonzero");
    return second_term_direct(gr_pow(cayley(beta1), alpha1));
}

Verification verify_formula(const MachinFormula& f) {
    check_betas(f);
    GaussianInt p{1, 0};
    for (const auto& t : f.terms) {
        SplitAlpha a = split_alpha(t.alpha);
        GaussianInt w = gaussian_of(t.beta);
        // (w / conj w)^(-n) = (conj w / w)^n
        p = p * gi_pow(a.negative ? w.conj() : w, a.magnitude);
    }
    Verification v;
    v.holds = p.re == p.im;
    if (!v.holds) {
        GaussianRational pr(p);
        v.product = pr / pr.conj();
    }
    return v;
}

Verification verify_formula_rational(const MachinFormula& f) {
    check_betas(f);
    GaussianRational prod{BigRational(1), BigRational(0)};
    for (const auto& t : f.terms) {
        SplitAlpha a = split_alpha(t.alpha);
        GaussianRational z = cayley(t.beta);
        if (a.negative) z = GaussianRational{BigRational(1), BigRational(0)} / z;
        prod = prod * gr_pow(z, a.magnitude);
    }
    Verification v;
    v.holds = prod == GaussianRational::i_unit();
    if (!v.holds) v.product = prod;
    return v;
}

bool check_relation_pair(std::int64_t alpha_a, const BigRational& beta_a, std::int64_t alpha_b,
                         const BigRational& beta_b) {
    if (beta_a.is_zero() || beta_b.is_zero()) {
        throw Error(ErrorKind::usage, "cotangent argument beta must be nonzero");
    }
    auto power = [](std::int64_t alpha, const BigRational& beta) {
        GaussianInt w = gaussian_of(beta);
        if (alpha < 0) w = w.conj();
        return gi_pow(w, static_cast<std::uint64_t>(alpha < 0 ? -alpha : alpha));
    };
    // P_a / conj(P_a) == P_b / conj(P_b)  <=>  P_a · conj(P_b) is real.
    GaussianInt cross = power(alpha_a, beta_a) * power(alpha_b, beta_b).conj();
    return sgn(cross.im) == 0;
}

}  // namespace mlpi
