#pragma once

// Convergence measurement: digits of pi gained per series term.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlpi/exact.hpp"
#include "mlpi/machin.hpp"
#include "mlpi/realnum.hpp"
#include "mlpi/series.hpp"

namespace mlpi {

/// log10(1 + 4 u^2): decimal digits gained per eq12 term at x = 1/u.
double predict_rate(const BigRational& u1);

/// Digits-per-term figures reported for k = 2, 3, 5, 10, 17, 23; empty otherwise.
std::optional<int> published_rate(int k);

/// pi computed by two unrelated routes that must agree digit for digit:
/// 4 arctan(1/5) - arctan(1/239) through the Gregory series and
/// 12 arctan(1/18) + 8 arctan(1/57) - 5 arctan(1/239) through Euler's series.
struct ReferencePi {
    FixedReal value;
    int valid_digits = 0;
    std::string digits;  // "3.14159…" with valid_digits fractional digits
};

ReferencePi reference_pi(int digits);

/// Length of the common prefix of the fractional digits of `approx` and the
/// reference; 0 if the integer parts differ.
int correct_digits(const FixedReal& approx, const ReferencePi& reference);

struct ConvergenceSample {
    int terms = 0;
    int correct_digits = 0;
};

struct ConvergenceReport {
    int k = 0;  // 0 when the first coefficient is not a power of two
    BigRational u1;
    std::optional<double> formula_digits_per_term;  // least-squares slope over terms >= 3
    double predicted_digits_per_term = 0.0;
    std::optional<int> reported_rate;
    std::vector<ConvergenceSample> samples;
    std::chrono::duration<double> wall_time_per_term{0};
    bool in_band = false;  // |measured - predicted| / predicted < 0.15
};

/// Partial sums for m = 1..max_terms scored against the reference.
/// Throws InsufficientReference when the reference cannot resolve the
/// digits the run is expected to produce.
ConvergenceReport measure_convergence(const MachinFormula& f, int max_terms, const ReferencePi& reference);

/// Least-squares slope of digits against terms over samples with terms >= 3.
std::optional<double> fit_slope(const std::vector<ConvergenceSample>& samples);

struct MethodError {
    Method method = Method::eq12;
    FixedReal abs_error;
    double log10_error = 0.0;  // -inf for an exact result
};

/// gregory, euler and eq12 at equal term counts against eq12 at 4x terms.
std::vector<MethodError> compare_methods(const BigRational& x, int terms, std::int64_t scale);

}  // namespace mlpi
