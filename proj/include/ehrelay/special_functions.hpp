#pragma once

namespace ehrelay {

// Scaled complementary error function exp(x^2) * erfc(x).
// Usable where erfc alone would underflow (large positive x); for
// x <= 0 the unscaled erfc should be preferred by callers.
double erfcx(double x);

// Regularized incomplete gamma ratios for integer shape n >= 1,
// evaluated by the finite series
//   Q(n, x) = e^{-x} sum_{k=0}^{n-1} x^k / k!,    P(n, x) = 1 - Q(n, x).
// Q is the cancellation-free side; P(1, x) reduces to 1 - e^{-x} exactly.
double gamma_p(int n, double x);
double gamma_q(int n, double x);

}  // namespace ehrelay
