#include "mlpi/analysis.hpp"

#include <cmath>
#include <limits>

#include "mlpi/error.hpp"

namespace mlpi {

namespace {

constexpr double kBand = 0.15;

// k for an alpha of the form 2^(k-1), else 0.
int k_of(const BigRational& alpha) {
    if (!alpha.is_integer() || alpha.sign() <= 0) return 0;
    const BigInt& a = alpha.num();
    if (mpz_popcount(a.get_mpz_t()) != 1) return 0;
    return static_cast<int>(mpz_scan1(a.get_mpz_t(), 0)) + 1;
}

FixedReal combine(const std::vector<std::pair<long, FixedReal>>& parts, std::int64_t scale) {
    FixedReal acc = FixedReal::from_integer(0, scale);
    for (const auto& [coef, v] : parts) acc = fr_add(acc, v.mul_int(coef));
    return acc;
}

int terms_for(double digits, double per_term) {
    return static_cast<int>(std::ceil(digits / per_term)) + 4;
}

}  // namespace

double predict_rate(const BigRational& u1) {
    if (u1.sign() <= 0) throw Error(ErrorKind::usage, "predict_rate needs u1 > 0");
    MachinFormula f;
    f.terms.push_back({BigRational(1), u1});
    return formula_rate(f);
}

std::optional<int> published_rate(int k) {
    switch (k) {
    case 2: return 1;
    case 3: return 2;
    case 5: return 3;
    case 10: return 6;
    case 17: return 10;
    case 23: return 14;
    default: return std::nullopt;
    }
}

ReferencePi reference_pi(int digits) {
    if (digits < 1) throw Error(ErrorKind::usage, "reference digits must be >= 1");
    int pad = 16;
    for (int attempt = 0; attempt < 4; ++attempt, pad *= 2) {
        const double target = digits + pad;
        const std::int64_t scale = bits_for_digits(static_cast<std::int64_t>(target)) + 16;
        auto gregory = [&](long num, long den) {
            const BigRational x{num, den};
            return arctan_gregory(x, terms_for(target, 2.0 * std::log10(static_cast<double>(den) / num)), scale)
                .value;
        };
        auto euler = [&](long num, long den) {
            const BigRational x{num, den};
            double y = static_cast<double>(num) * num / (static_cast<double>(den) * den + static_cast<double>(num) * num);
            return arctan_euler(x, terms_for(target, -std::log10(y)), scale).value;
        };
        FixedReal machin = combine({{16, gregory(1, 5)}, {-4, gregory(1, 239)}}, scale);
        FixedReal gauss = combine({{48, euler(1, 18)}, {32, euler(1, 57)}, {-20, euler(1, 239)}}, scale);
        DecimalString a = fr_to_decimal(machin, digits);
        DecimalString b = fr_to_decimal(gauss, digits);
        if (a.valid && b.valid) {
            if (a.text != b.text) {
                throw std::logic_error("independent pi routes disagree");
            }
            ReferencePi ref;
            ref.value = machin.err_ulp() <= gauss.err_ulp() ? machin : gauss;
            ref.valid_digits = digits;
            ref.digits = a.text;
            return ref;
        }
    }
    throw Error(ErrorKind::precision_exhausted, "reference pi did not validate");
}

int correct_digits(const FixedReal& approx, const ReferencePi& reference) {
    const std::string a = fr_to_decimal(approx, reference.valid_digits).text;
    const std::string& r = reference.digits;
    const auto dot_a = a.find('.');
    const auto dot_r = r.find('.');
    if (dot_a == std::string::npos || a.substr(0, dot_a) != r.substr(0, dot_r)) return 0;
    int n = 0;
    for (std::size_t i = dot_a + 1, j = dot_r + 1; i < a.size() && j < r.size() && a[i] == r[j]; ++i, ++j) ++n;
    return n;
}

std::optional<double> fit_slope(const std::vector<ConvergenceSample>& samples) {
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        if (s.terms < 3) continue;
        const double x = s.terms;
        const double y = s.correct_digits;
        n += 1;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (n < 2 || det == 0.0) return std::nullopt;
    return (n * sxy - sx * sy) / det;
}

ConvergenceReport measure_convergence(const MachinFormula& f, int max_terms, const ReferencePi& reference) {
    if (f.terms.empty()) throw Error(ErrorKind::usage, "formula has no terms");
    if (max_terms < 1) throw Error(ErrorKind::usage, "max_terms must be >= 1");
    ConvergenceReport rep;
    rep.k = k_of(f.terms.front().alpha);
    rep.u1 = f.terms.front().beta;
    rep.reported_rate = published_rate(rep.k);
    rep.predicted_digits_per_term = formula_rate(f);

    const double expected = rep.predicted_digits_per_term * max_terms + 10.0;
    if (expected > reference.valid_digits) {
        throw Error(ErrorKind::insufficient_reference,
                    "reference pi has " + std::to_string(reference.valid_digits) + " digits but the run needs about " +
                        std::to_string(static_cast<int>(expected)));
    }

    const std::int64_t scale = reference.value.scale();
    const auto start = std::chrono::steady_clock::now();
    std::vector<FixedReal> sums = pi_partial_sums(f, max_terms, scale);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    rep.wall_time_per_term = elapsed / max_terms;

    for (int m = 1; m <= max_terms; ++m) {
        rep.samples.push_back({m, correct_digits(sums[static_cast<std::size_t>(m - 1)], reference)});
    }
    rep.formula_digits_per_term = fit_slope(rep.samples);
    if (rep.formula_digits_per_term) {
        rep.in_band = std::fabs(*rep.formula_digits_per_term - rep.predicted_digits_per_term) /
                          rep.predicted_digits_per_term <
                      kBand;
    }
    return rep;
}

std::vector<MethodError> compare_methods(const BigRational& x, int terms, std::int64_t scale) {
    if (x.abs() >= BigRational(1)) {
        throw Error(ErrorKind::divergent_argument, "method comparison needs |x| < 1");
    }
    std::vector<MethodError> out;
    if (x.is_zero()) {
        for (Method m : {Method::gregory, Method::euler, Method::eq12}) {
            out.push_back({m, FixedReal::from_integer(0, scale), -std::numeric_limits<double>::infinity()});
        }
        return out;
    }
    const FixedReal ref = arctan_eq12(x, 4 * terms, scale).value;
    for (const SeriesResult& r :
         {arctan_gregory(x, terms, scale), arctan_euler(x, terms, scale), arctan_eq12(x, terms, scale)}) {
        FixedReal err = fr_sub(r.value, ref).abs();
        out.push_back({r.method, err, err.log10_abs()});
    }
    return out;
}

}  // namespace mlpi
