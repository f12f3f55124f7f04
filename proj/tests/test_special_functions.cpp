#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ehrelay/special_functions.hpp"

using namespace ehrelay;

TEST_CASE("erfcx agrees with the direct product where both are valid") {
    // The continued fraction takes over above 6; the direct product
    // exp(x^2) erfc(x) stays representable up to x ~ 26.
    for (double x = 6.001; x < 26.0; x += 0.37) {
        const double direct = std::exp(x * x) * std::erfc(x);
        CHECK(erfcx(x) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("erfcx basics") {
    CHECK(erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(erfcx(1.0) == doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-14));
    // Monotone decreasing on the positive axis.
    double prev = erfcx(0.0);
    for (double x = 0.5; x < 40.0; x += 0.5) {
        const double v = erfcx(x);
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
    // Large-x asymptote 1/(x sqrt(pi)).
    CHECK(erfcx(1e4) == doctest::Approx(1.0 / (1e4 * std::sqrt(M_PI))).epsilon(1e-8));
    // Reflection for negative arguments.
    CHECK(erfcx(-1.5) ==
          doctest::Approx(std::exp(2.25) * std::erfc(-1.5)).epsilon(1e-13));
}

TEST_CASE("gamma_q finite series") {
    // Shape 1 is the plain exponential survival.
    for (double x : {0.0, 0.3, 1.0, 5.0, 30.0}) {
        CHECK(gamma_q(1, x) == std::exp(-x));
    }
    // Hand value: Q(3, 3) = e^-3 (1 + 3 + 4.5).
    CHECK(gamma_q(3, 3.0) == doctest::Approx(std::exp(-3.0) * 8.5).epsilon(1e-14));
    CHECK(gamma_p(3, 3.0) == doctest::Approx(0.5768099188731565).epsilon(1e-12));
}

TEST_CASE("gamma ratios are complementary and monotone") {
    for (int n : {1, 2, 5, 40, 300}) {
        double prev_p = -1.0;
        for (double x = 0.0; x < 4.0 * n; x += 0.25 * n) {
            const double p = gamma_p(n, x);
            const double q = gamma_q(n, x);
            CHECK(p + q == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(p >= prev_p);
            CHECK(p >= 0.0);
            CHECK(q >= 0.0);
            prev_p = p;
        }
    }
    CHECK(gamma_q(4, 0.0) == 1.0);
    CHECK(gamma_q(4, std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(gamma_q(3, 1e4) == 0.0);  // underflows to an honestly negligible value
}

TEST_CASE("gamma ratio input validation") {
    CHECK_THROWS(gamma_q(0, 1.0));
    CHECK_THROWS(gamma_q(3, -0.5));
}
