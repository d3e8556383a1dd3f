#include <omp.h>

#include "doctest.h"
#include "mlpi/exact.hpp"
#include "mlpi/machin.hpp"
#include "mlpi/series.hpp"

using namespace mlpi;

namespace {

bool identical(const FixedReal& a, const FixedReal& b) {
    return a.mantissa() == b.mantissa() && a.scale() == b.scale() && a.err_ulp() == b.err_ulp();
}

struct Threads {
    int saved = omp_get_max_threads();
    explicit Threads(int n) { omp_set_num_threads(n); }
    ~Threads() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("Gaussian powers match the serial kernels") {
    Threads t(4);
    // large enough for the parallel squaring branch
    for (unsigned e : {10U, 16U}) {
        GaussianInt g{83443, 1};
        const std::uint64_t n = std::uint64_t{1} << e;
        CHECK(gi_pow(g, n) == serial::gi_pow(g, n));
    }
    GaussianInt h = gi_pow({651, -1}, std::uint64_t{1} << 15);
    CHECK(gi_square(h) == serial::gi_square(h));
    CHECK(gi_pow({3, 2}, 12345) == serial::gi_pow({3, 2}, 12345));
}

TEST_CASE("pi partial sums match the serial loop") {
    Threads t(3);
    BigRational u1(651);
    MachinFormula k10 = MachinFormula::two_term(u1, 10, solve_u2(u1, 10));
    MachinFormula gauss;
    gauss.terms = {{BigRational(12), BigRational(18)}, {BigRational(8), BigRational(57)},
                   {BigRational(-5), BigRational(239)}};
    for (const MachinFormula* f : {&k10, &gauss}) {
        std::vector<FixedReal> par = pi_partial_sums(*f, 25, 700);
        std::vector<FixedReal> ser = serial::pi_partial_sums(*f, 25, 700);
        REQUIRE(par.size() == ser.size());
        for (std::size_t i = 0; i < par.size(); ++i) CHECK(identical(par[i], ser[i]));
    }
}

TEST_CASE("one-stream and two-stream arctan agree") {
    for (const BigRational& x : {BigRational(1, 5), BigRational(-2, 57), BigRational(3)}) {
        SeriesResult one = arctan_eq12(x, 40, 512);
        SeriesResult two = serial::arctan_eq12(x, 40, 512);
        CHECK(one.value.lower() <= two.value.upper());
        CHECK(two.value.lower() <= one.value.upper());
        CHECK(fr_valid_digits(one.value, 200) == fr_valid_digits(two.value, 200));
    }
}
