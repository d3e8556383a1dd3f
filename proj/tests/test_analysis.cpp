#include <cmath>

#include "doctest.h"
#include "mlpi/analysis.hpp"
#include "mlpi/error.hpp"

using namespace mlpi;

namespace {

MachinFormula published_formula(int k) {
    BigRational u1;
    switch (k) {
        case 2: u1 = BigRational(12, 5); break;
        case 3: u1 = BigRational(5); break;
        case 5: u1 = BigRational(20); break;
        default: u1 = BigRational(651); break;
    }
    return MachinFormula::two_term(u1, k, solve_u2(u1, k));
}

}  // namespace

TEST_CASE("predict_rate") {
    CHECK(predict_rate(BigRational(5)) == doctest::Approx(2.0043).epsilon(1e-4));
    CHECK(predict_rate(BigRational(651)) == doctest::Approx(6.2290).epsilon(1e-4));
    CHECK(predict_rate(BigRational(83443)) == doctest::Approx(10.4448).epsilon(1e-4));
    CHECK(predict_rate(BigRational(53403537, 10)) == doctest::Approx(14.0569).epsilon(1e-4));
    CHECK(std::lround(predict_rate(BigRational(83443))) == 10);
    CHECK(std::lround(predict_rate(BigRational(53403537, 10))) == 14);
}

TEST_CASE("published rates") {
    CHECK(published_rate(2) == 1);
    CHECK(published_rate(10) == 6);
    CHECK(published_rate(23) == 14);
    CHECK_FALSE(published_rate(4).has_value());
}

TEST_CASE("reference pi") {
    ReferencePi ref = reference_pi(300);
    CHECK(ref.valid_digits >= 300);
    CHECK(ref.digits.substr(0, 52) == "3.14159265358979323846264338327950288419716939937510");
    CHECK(correct_digits(ref.value, ref) >= 300);
    FixedReal three = FixedReal::from_integer(3, 64);
    CHECK(correct_digits(three, ref) == 0);
    FixedReal approx = FixedReal::from_rational(BigRational(355, 113), 64);
    CHECK(correct_digits(approx, ref) == 6);
}

TEST_CASE("measured slopes") {
    ReferencePi ref = reference_pi(400);
    for (int k : {2, 3, 5, 10}) {
        CAPTURE(k);
        ConvergenceReport r = measure_convergence(published_formula(k), 20, ref);
        REQUIRE(r.formula_digits_per_term.has_value());
        CHECK(r.k == k);
        CHECK(std::abs(std::lround(*r.formula_digits_per_term) - *published_rate(k)) <= 1);
        CHECK(r.in_band);
        REQUIRE(r.samples.size() == 20);
        if (k == 2) continue;  // x = 5/12 oscillates enough to lose a digit now and then
        for (std::size_t i = 1; i < r.samples.size(); ++i)
            CHECK(r.samples[i].correct_digits >= r.samples[i - 1].correct_digits);
    }
    MachinFormula single;
    single.terms.push_back({BigRational(1), BigRational(1)});
    ConvergenceReport one = measure_convergence(single, 40, ref);
    REQUIRE(one.formula_digits_per_term.has_value());
    CHECK(*one.formula_digits_per_term == doctest::Approx(std::log10(5.0)).epsilon(0.1));
    CHECK(one.k == 1);
}

TEST_CASE("reference too short") {
    ReferencePi ref = reference_pi(50);
    try {
        (void)measure_convergence(published_formula(10), 20, ref);
        FAIL("expected InsufficientReference");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::insufficient_reference);
    }
}

TEST_CASE("fit_slope") {
    std::vector<ConvergenceSample> s;
    for (int t = 1; t <= 10; ++t) s.push_back({t, 3 * t + (t < 3 ? 7 : 1)});
    REQUIRE(fit_slope(s).has_value());
    CHECK(*fit_slope(s) == doctest::Approx(3.0));
    CHECK_FALSE(fit_slope({{1, 2}, {2, 4}}).has_value());
}

TEST_CASE("method comparison at x = 1/239") {
    std::vector<MethodError> errs = compare_methods(BigRational(1, 239), 5, 1200);
    double euler = 0;
    double eq12 = 0;
    for (const auto& e : errs) {
        if (e.method == Method::euler) euler = e.log10_error;
        if (e.method == Method::eq12) eq12 = e.log10_error;
    }
    CHECK(euler - eq12 > 3);
}
