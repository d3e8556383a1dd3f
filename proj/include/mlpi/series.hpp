#pragma once

// Arctangent series and pi from Machin-like formulas.
//
// Three expansions of arctan(x):
//   gregory : sum_{n>=1} (-1)^(n+1) x^(2n-1) / (2n-1)
//   euler   : sum_{n>=0} 4^n (n!)^2 / (2n+1)! · x^(2n+1) / (1+x^2)^(n+1)
//   eq12    : i · sum_{m>=1} [ t^(2m-1) - conj(t)^(2m-1) ] / (2m-1),
//             t = 1 / (1 + 2i/x), |t|^2 = 1 / (1 + 4/x^2)
// For real x the eq12 bracket is 2i·Im(t^(2m-1)), so
//   arctan(x) = -2 · sum Im(t^(2m-1)) / (2m-1)
// and each term is smaller than the previous one by a factor |t|^2.

#include <cstdint>
#include <vector>

#include "mlpi/exact.hpp"
#include "mlpi/machin.hpp"
#include "mlpi/realnum.hpp"

namespace mlpi {

enum class Method { gregory, euler, eq12 };

const char* to_string(Method m) noexcept;

struct SeriesResult {
    FixedReal value;  // error bound covers truncation and rounding
    int terms_used = 0;
    double per_term_log10 = 0.0;  // measured decay of the last two terms, in decimal digits
    Method method = Method::eq12;
};

struct ComplexFixed {
    FixedReal re;
    FixedReal im;
};

ComplexFixed cmul(const ComplexFixed& a, const ComplexFixed& b, std::int64_t scale);

SeriesResult arctan_gregory(const BigRational& x, int terms, std::int64_t scale);
SeriesResult arctan_euler(const BigRational& x, int terms, std::int64_t scale);
SeriesResult arctan_eq12(const BigRational& x, int terms, std::int64_t scale);

/// Partial sums S_1..S_max_terms of the eq12 series for x, each with its own
/// truncation bound folded into the error.
std::vector<FixedReal> arctan_eq12_partial_sums(const BigRational& x, int max_terms,
                                                std::int64_t scale);

/// 4 · sum_j alpha_j · arctan(1/beta_j) with the eq12 series truncated at `terms`.
SeriesResult pi_from_formula(const MachinFormula& f, int terms, std::int64_t scale);

/// pi_m for m = 1..max_terms. Formula terms are evaluated in parallel.
std::vector<FixedReal> pi_partial_sums(const MachinFormula& f, int max_terms, std::int64_t scale);

/// 2^(k+1) · arctan(1/c_k) with c_k = a_k / sqrt(2 - a_{k-1}) taken from the
/// nested radicals; needs no second term.
SeriesResult pi_eq18(int k, int terms, std::int64_t scale);
std::vector<FixedReal> pi_eq18_partial_sums(int k, int max_terms, std::int64_t scale);

/// Smallest per-term digit gain over the formula's terms: min_j log10(1 + 4 beta_j^2).
double formula_rate(const MachinFormula& f);

namespace serial {

/// Both conjugate streams summed separately; asserts that the imaginary
/// residue of the result stays inside the tracked error.
SeriesResult arctan_eq12(const BigRational& x, int terms, std::int64_t scale);

std::vector<FixedReal> pi_partial_sums(const MachinFormula& f, int max_terms, std::int64_t scale);

}  // namespace serial

}  // namespace mlpi
