#include "ehrelay/throughput.hpp"

#include <cmath>

#include "ehrelay/errors.hpp"

namespace ehrelay {

namespace {
constexpr double kSuccessFloor = 1e-6;
constexpr double kTruncationLimit = 0x1.0p60;
}  // namespace

ThroughputResult throughput_delay_sensitive(double gamma_th, const SystemParams& p,
                                            const OutageEvaluator& outage, OutageSource source) {
    if (!(gamma_th > 0.0)) {
        throw std::invalid_argument("delay-sensitive throughput needs a positive SIR threshold");
    }
    const double rate = std::log2(1.0 + gamma_th);
    ThroughputResult r;
    r.mode = ThroughputMode::kDelaySensitive;
    r.outage_source = source;
    r.value = 0.5 * (1.0 - p.alpha) * rate * (1.0 - outage(gamma_th));
    return r;
}

ThroughputResult throughput_delay_tolerant(const SystemParams& p, const OutageEvaluator& outage,
                                           const QuadratureSettings& quad, OutageSource source) {
    quad.validate();
    double upper = 1.0;
    while (1.0 - outage(upper) >= kSuccessFloor) {
        upper *= 2.0;
        if (upper > kTruncationLimit) {
            throw NonConvergenceError(
                "delay-tolerant throughput: outage never approaches one; the supplied "
                "evaluator is not a valid SIR distribution");
        }
    }

    auto integrand = [&outage](double x) { return (1.0 - outage(x)) / (1.0 + x); };
    const IntegralEstimate est = integrate_finite(integrand, 0.0, upper, quad);
    if (!est.converged) {
        throw NonConvergenceError("delay-tolerant throughput: quadrature did not converge");
    }

    ThroughputResult r;
    r.mode = ThroughputMode::kDelayTolerant;
    r.outage_source = source;
    r.truncation_upper = upper;
    r.value = (1.0 - p.alpha) / (2.0 * std::log(2.0)) * est.value;
    return r;
}

}  // namespace ehrelay
