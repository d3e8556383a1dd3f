#include <cmath>
#include <random>

#include "doctest.h"
#include "mlpi/analysis.hpp"
#include "mlpi/error.hpp"
#include "mlpi/series.hpp"

using namespace mlpi;

namespace {

bool overlaps(const FixedReal& a, const FixedReal& b) {
    return a.lower() <= b.upper() && b.lower() <= a.upper();
}

double log10_rational(const BigRational& v) {
    BigRational a = v.abs();
    return log10_abs(a.num()) - log10_abs(a.den());
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::usage;
}

MachinFormula formula(std::initializer_list<std::pair<long, long>> terms) {
    MachinFormula f;
    for (const auto& [a, b] : terms) f.terms.push_back({BigRational(a), BigRational(b)});
    return f;
}

const char* kPi100 =
    "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

}  // namespace

TEST_CASE("gregory examples") {
    SeriesResult g = arctan_gregory(BigRational(1, 2), 3, 200);
    BigRational three = BigRational(1, 2) - BigRational(1, 24) + BigRational(1, 160);
    CHECK(g.value.center() - three < BigRational(1, 1000000));
    CHECK(three - g.value.center() < BigRational(1, 1000000));
    CHECK(fr_to_decimal(FixedReal::from_rational(three, 200), 9).text == "0.464583333");
    CHECK(arctan_gregory(BigRational(0), 5, 64).value.center() == BigRational(0));
    CHECK(kind_of([] { (void)arctan_gregory(BigRational(1), 5, 64); }) == ErrorKind::divergent_argument);
}

TEST_CASE("eq12 single terms") {
    // x = 1: t = (1 - 2i)/5, first term -2 Im t = 4/5
    SeriesResult one = pi_from_formula(formula({{1, 1}}), 1, 128);
    CHECK((one.value.center() - BigRational(16, 5)).abs() < BigRational(1, 1000000000000L));
    CHECK(one.value.contains(BigRational(16, 5)));
    SeriesResult e18 = pi_eq18(2, 1, 200);
    CHECK(fr_to_decimal(e18.value, 30).text.substr(0, 20) == "3.177418779992566044");
    CHECK(kind_of([] { (void)arctan_eq12(BigRational(0), 5, 64); }) == ErrorKind::zero_argument);
}

TEST_CASE("cross-method agreement") {
    const std::int64_t scale = 400;
    struct Case {
        BigRational x;
        int g, e, q;
    };
    const Case cases[] = {
        {BigRational(1, 2), 190, 190, 90},
        {BigRational(1, 5), 60, 60, 30},
        {BigRational(1, 239), 12, 12, 12},
    };
    for (const auto& c : cases) {
        SeriesResult g = arctan_gregory(c.x, c.g, scale);
        SeriesResult e = arctan_euler(c.x, c.e, scale);
        SeriesResult q = arctan_eq12(c.x, c.q, scale);
        CHECK(overlaps(g.value, e.value));
        CHECK(overlaps(g.value, q.value));
        CHECK(overlaps(e.value, q.value));
        CHECK(fr_valid_digits(q.value, 200) >= 40);
    }
    SeriesResult g = arctan_gregory(BigRational(1, 5), 30, 256);
    SeriesResult q = arctan_eq12(BigRational(1, 5), 30, 256);
    CHECK(fr_to_decimal(g.value, 40).text == fr_to_decimal(q.value, 40).text);
    CHECK(fr_to_decimal(q.value, 40).text == "0.1973955598498807583700497651947902934475");
}

TEST_CASE("euler converges at x = 1") {
    SeriesResult e = arctan_euler(BigRational(1), 200, 256);
    SeriesResult q = arctan_eq12(BigRational(1), 60, 256);
    CHECK(overlaps(e.value, q.value));
    CHECK(fr_to_decimal(q.value.mul_int(4), 40).text == std::string(kPi100).substr(0, 42));
}

TEST_CASE("addition identity") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> num(1, 9);
    std::uniform_int_distribution<long> den(10, 60);
    for (int i = 0; i < 40; ++i) {
        BigRational c(num(rng), den(rng));
        BigRational d(num(rng), den(rng));
        if (i % 3 == 0) d = -d;
        BigRational sum = (c + d) / (BigRational(1) - c * d);
        if (sum.is_zero()) continue;
        const int terms = 60;
        FixedReal lhs = fr_add(arctan_eq12(c, terms, 300).value, arctan_eq12(d, terms, 300).value);
        FixedReal rhs = arctan_eq12(sum, terms, 300).value;
        CHECK(overlaps(lhs, rhs));
        CHECK(fr_sub(lhs, rhs).error_bound() < BigRational(1, 1000000000));
    }
}

TEST_CASE("monotone truncation and per-term gain") {
    // term phases drift by about x/2 per step, so single-step gains wobble
    // for large x; the fitted slope stays on the predicted rate
    struct Case {
        BigRational x;
        bool stepwise;
    };
    const Case cases[] = {{BigRational(1), false},     {BigRational(1, 2), false},   {BigRational(1, 5), false},
                          {BigRational(2, 57), true},  {BigRational(1, 239), true},  {BigRational(-1, 1000), true}};
    for (const auto& c : cases) {
        CAPTURE(c.x.to_string());
        const double xd = c.x.to_double();
        const double predicted = std::log10(1.0 + 4.0 / (xd * xd));
        const int max_terms = std::max(8, static_cast<int>(120 / predicted));
        const std::int64_t scale = bits_for_digits(static_cast<std::int64_t>(predicted * (max_terms + 10)) + 20);
        std::vector<FixedReal> sums = arctan_eq12_partial_sums(c.x, max_terms, scale);
        REQUIRE(static_cast<int>(sums.size()) == max_terms);
        BigRational limit = arctan_eq12(c.x, max_terms + 10, scale).value.center();
        std::vector<ConvergenceSample> samples;
        BigRational prev = (sums[0].center() - limit).abs();
        for (int m = 1; m < max_terms; ++m) {
            BigRational err = (sums[m].center() - limit).abs();
            samples.push_back({m + 1, static_cast<int>(std::floor(-log10_rational(err)))});
            if (c.stepwise) {
                CHECK(err < prev);
                if (m >= 3) {
                    double gain = log10_rational(prev) - log10_rational(err);
                    CHECK(std::abs(gain - predicted) / predicted < 0.15);
                }
            }
            prev = err;
        }
        std::optional<double> slope = fit_slope(samples);
        REQUIRE(slope.has_value());
        CHECK(std::abs(*slope - predicted) / predicted < 0.15);
    }
    // x = 1/5: terms 2 -> 3 shrinks the error 162.09 times (direct multiprecision evaluation)
    std::vector<FixedReal> s = arctan_eq12_partial_sums(BigRational(1, 5), 3, 256);
    BigRational limit = arctan_eq12(BigRational(1, 5), 60, 256).value.center();
    double ratio = ((s[1].center() - limit) / (s[2].center() - limit)).abs().to_double();
    CHECK(ratio == doctest::Approx(162.09).epsilon(0.001));
}

TEST_CASE("two-stream reference keeps the imaginary residue inside the bound") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 400);
    for (int i = 0; i < 60; ++i) {
        BigRational x(num(rng), den(rng));
        if (x.is_zero()) continue;
        SeriesResult two = serial::arctan_eq12(x, 25, 256);
        SeriesResult one = arctan_eq12(x, 25, 256);
        CHECK(overlaps(two.value, one.value));
    }
}

TEST_CASE("eq12 beats euler for small arguments") {
    for (const BigRational& x : {BigRational(1, 5), BigRational(1, 10), BigRational(1, 57), BigRational(1, 239)}) {
        for (int terms : {3, 5, 10}) {
            std::vector<MethodError> errs = compare_methods(x, terms, 1200);
            REQUIRE(errs.size() == 3);
            const MethodError* euler = nullptr;
            const MethodError* eq12 = nullptr;
            for (const auto& e : errs) {
                if (e.method == Method::euler) euler = &e;
                if (e.method == Method::eq12) eq12 = &e;
            }
            REQUIRE(euler);
            REQUIRE(eq12);
            CHECK(eq12->log10_error < euler->log10_error);
        }
    }
    std::vector<MethodError> zero = compare_methods(BigRational(0), 10, 128);
    for (const auto& e : zero) CHECK(e.abs_error.center().is_zero());
}

TEST_CASE("pi from formulas") {
    ReferencePi ref = reference_pi(140);
    REQUIRE(ref.valid_digits >= 120);
    CHECK(ref.digits.substr(0, 102) == kPi100);

    SeriesResult machin = pi_from_formula(formula({{4, 5}, {1, -239}}), 40, 1024);
    CHECK(correct_digits(machin.value, ref) >= 80);
    CHECK(machin.value.contains(ref.value.center()) == overlaps(machin.value, ref.value));

    BigRational u1(651);
    MachinFormula k10 = MachinFormula::two_term(u1, 10, solve_u2(u1, 10));
    SeriesResult r10 = pi_from_formula(k10, 20, 1024);
    CHECK(correct_digits(r10.value, ref) >= 100);
    CHECK(overlaps(r10.value, ref.value));

    std::vector<FixedReal> sums = pi_partial_sums(k10, 20, 1024);
    REQUIRE(sums.size() == 20);
    CHECK(sums.back().center() == r10.value.center());

    CHECK(formula_rate(k10) == doctest::Approx(std::log10(1.0 + 4.0 * 651.0 * 651.0)));
}

TEST_CASE("eq18") {
    ReferencePi ref = reference_pi(140);
    SeriesResult k3 = pi_eq18(3, 30, 800);
    CHECK(correct_digits(k3.value, ref) >= 60);
    CHECK(overlaps(k3.value, ref.value));

    std::vector<FixedReal> sums = pi_eq18_partial_sums(40, 6, bits_for_digits(200));
    REQUIRE(sums.size() == 6);
    BigRational pi = ref.value.center();
    double e5 = log10_rational(sums[4].center() - pi);
    double e6 = log10_rational(sums[5].center() - pi);
    CHECK(e5 - e6 > 23);
    CHECK(e5 - e6 < 25);
}
