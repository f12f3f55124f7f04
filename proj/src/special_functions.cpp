#include "ehrelay/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace ehrelay {

namespace {
constexpr double kOneOverSqrtPi = 0.56418958354775628695;
}

double erfcx(double x) {
    if (x < 0.0) {
        // erfcx(x) = 2 exp(x^2) - erfcx(-x); overflows for x << -26,
        // which is outside any regime this library evaluates.
        return 2.0 * std::exp(x * x) - erfcx(-x);
    }
    if (x <= 6.0) {
        // Both factors stay well inside double range here.
        return std::exp(x * x) * std::erfc(x);
    }
    // Laplace continued fraction, evaluated bottom-up:
    //   erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    double tail = 0.0;
    for (int k = 60; k >= 1; --k) {
        tail = (0.5 * k) / (x + tail);
    }
    return kOneOverSqrtPi / (x + tail);
}

double gamma_q(int n, double x) {
    if (n < 1) throw std::invalid_argument("gamma_q: shape must be >= 1");
    if (!(x >= 0.0)) throw std::invalid_argument("gamma_q: argument must be >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    double term = std::exp(-x);
    double sum = term;
    for (int k = 1; k < n; ++k) {
        term *= x / k;
        sum += term;
    }
    return sum < 1.0 ? sum : 1.0;
}

double gamma_p(int n, double x) {
    return 1.0 - gamma_q(n, x);
}

}  // namespace ehrelay
