#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ehrelay/distributions.hpp"
#include "ehrelay/quadrature.hpp"

using namespace ehrelay;

TEST_CASE("known semi-infinite integrals") {
    QuadratureSettings q;
    CHECK(integrate_semi_infinite([](double t) { return std::exp(-t); }, 0.0, q).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_semi_infinite([](double t) { return t * std::exp(-t); }, 0.0, q).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    // Shifted lower limit.
    CHECK(integrate_semi_infinite([](double t) { return std::exp(-t); }, 2.0, q).value ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("density normalization through the engine") {
    QuadratureSettings q;
    const ErlangPdf pdf{ErlangSpec(5, 0.3)};
    const IntegralEstimate est =
        integrate_semi_infinite([&pdf](double t) { return pdf(t); }, 0.0, q);
    CHECK(est.converged);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("finite intervals") {
    QuadratureSettings q;
    CHECK(integrate_finite([](double x) { return x * x; }, 0.0, 1.0, q).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate_finite([](double x) { return std::sin(x); }, 0.0, M_PI, q).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_finite([](double) { return 1.0; }, 3.0, 3.0, q).value == 0.0);
}

TEST_CASE("tolerance is honored") {
    QuadratureSettings loose{1e-3, 1e-6, 50};
    QuadratureSettings tight{1e-12, 1e-14, 50};
    auto f = [](double t) { return std::exp(-t) * std::cos(3.0 * t); };
    const double truth = 0.1;  // Re 1/(1+3i) = 1/10
    const IntegralEstimate a = integrate_semi_infinite(f, 0.0, loose);
    const IntegralEstimate b = integrate_semi_infinite(f, 0.0, tight);
    CHECK(a.converged);
    CHECK(b.converged);
    CHECK(std::abs(a.value - truth) <= 1e-3);
    CHECK(std::abs(b.value - truth) <= 1e-11);
    CHECK(b.error_estimate <= a.error_estimate);
}

TEST_CASE("non-convergence is reported, not hidden") {
    // 1/t on (0,1] diverges; the engine must say so.
    QuadratureSettings q;
    const IntegralEstimate est = integrate_finite([](double t) { return 1.0 / t; }, 0.0, 1.0, q);
    CHECK_FALSE(est.converged);

    // Exhausted depth with a sane integrand still returns the estimate.
    QuadratureSettings shallow{1e-12, 1e-14, 2};
    const IntegralEstimate rough =
        integrate_semi_infinite([](double t) { return std::exp(-t); }, 0.0, shallow);
    CHECK_FALSE(rough.converged);
    CHECK(rough.value == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("non-finite integrand values flag the estimate") {
    QuadratureSettings q;
    const IntegralEstimate est = integrate_finite(
        [](double t) { return t < 0.5 ? 1.0 : std::numeric_limits<double>::quiet_NaN(); }, 0.0,
        1.0, q);
    CHECK_FALSE(est.converged);
}

TEST_CASE("settings validation") {
    QuadratureSettings bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    QuadratureSettings q;
    const QuadratureSettings inner = q.tightened();
    CHECK(inner.rel_tol == doctest::Approx(q.rel_tol * 0.1));
    CHECK(inner.abs_tol == doctest::Approx(q.abs_tol * 0.1));
}
