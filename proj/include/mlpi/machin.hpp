#pragma once

// Two-term Machin-like formulas pi/4 = sum alpha_j · arctan(1 / beta_j):
// exact solve for the second term and exact verification.
//
// With beta = p/q the factor (beta + i)/(beta - i) equals w / conj(w) for the
// Gaussian integer w = p + q·i. A formula holds (modulo pi) exactly when
//     prod (w_j / conj(w_j))^alpha_j = i.
// Writing P = prod w_j^alpha_j = A + B·i this is P = i·conj(P), i.e. A = B.
// The same algebra solves for the second cotangent argument:
//     (u2 + i)/(u2 - i) = i·conj(P)/P   =>   u2 = (A + B)/(A - B).

#include <cstdint>
#include <optional>
#include <vector>

#include "mlpi/exact.hpp"

namespace mlpi {

struct MachinTerm {
    BigRational alpha;  // coefficient
    BigRational beta;   // cotangent argument, arctan(1/beta)
};

struct MachinFormula {
    std::vector<MachinTerm> terms;

    /// [(2^(k-1), u1), (1, u2)]
    static MachinFormula two_term(const BigRational& u1, int k, const BigRational& u2);
};

/// u2 with pi/4 = 2^(k-1)·arctan(1/u1) + arctan(1/u2), via one Gaussian
/// integer power and a single gcd reduction.
BigRational solve_u2(const BigRational& u1, int k);

/// Same value through the Gaussian-rational expression
///     u2 = 2 / (z^(2^(k-1)) - i) - i,   z = (u1 + i)/(u1 - i),
/// asserting that the imaginary part vanishes. Used for cross-checking.
BigRational solve_u2_direct(const BigRational& u1, int k);

/// beta2 with pi/4 = alpha1·arctan(1/beta1) + arctan(1/beta2).
BigRational solve_second_term(std::uint64_t alpha1, const BigRational& beta1);
BigRational solve_second_term_direct(std::uint64_t alpha1, const BigRational& beta1);

struct Verification {
    bool holds = false;
    /// The exact product prod ((beta+i)/(beta-i))^alpha; filled on failure only.
    std::optional<GaussianRational> product;
};

/// Exact check of prod ((beta_j + i)/(beta_j - i))^alpha_j = i.
/// Throws NotExactlyVerifiable for non-integer alphas.
Verification verify_formula(const MachinFormula& f);

/// Reference path: the product accumulated in Gaussian rationals with gr_pow.
Verification verify_formula_rational(const MachinFormula& f);

/// ((b_a + i)/(b_a - i))^alpha_a == ((b_b + i)/(b_b - i))^alpha_b, i.e.
/// alpha_a·arctan(1/b_a) and alpha_b·arctan(1/b_b) agree modulo pi.
bool check_relation_pair(std::int64_t alpha_a, const BigRational& beta_a, std::int64_t alpha_b,
                         const BigRational& beta_b);

}  // namespace mlpi
