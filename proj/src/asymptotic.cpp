#include "ehrelay/asymptotic.hpp"

#include <cmath>
#include <stdexcept>

#include "ehrelay/distributions.hpp"
#include "ehrelay/errors.hpp"
#include "ehrelay/special_functions.hpp"

namespace ehrelay {

namespace {

// Mean link gains feeding one hop of the large-system kernel.
struct HopGains {
    double nu_harvest;       // EH links powering the hop's transmitter
    double omega;            // links from the transmitter to the PU receivers
    double lambda;           // information link
    double nu_interference;  // PU interference at the hop's receiver
};

struct HopTerms {
    double gamma_rate;
    double u;
    double u_star;
};

HopTerms hop_terms(double gamma_th, const SystemParams& p, const HopGains& g) {
    const double n = static_cast<double>(p.n_transmitters);
    const double log_m = std::log(static_cast<double>(p.m_receivers));
    HopTerms t;
    t.gamma_rate = p.p_putx * n * g.nu_interference * gamma_th / (g.lambda * p.p_interference);
    t.u_star = -g.omega * (1.0 + log_m);
    t.u = p.p_interference / (p.rho() * n * p.p_putx * g.nu_harvest) + t.u_star;
    return t;
}

// Success probability of one hop against the limiting model: the Z
// aggregates pinned at their means, the Y maximum replaced by
// omega(1 + ln M) plus a N(0, 2 omega^2) fluctuation.
double theta_kernel(double gamma_th, const SystemParams& p, const HopGains& g) {
    if (!(gamma_th >= 0.0)) throw std::invalid_argument("SIR threshold must be >= 0");
    const HopTerms t = hop_terms(gamma_th, p, g);

    const double a = t.gamma_rate * g.omega;
    const double b = t.u / (2.0 * g.omega);
    const double harvest_exponent =
        g.nu_interference * gamma_th / (g.lambda * p.rho() * g.nu_harvest);

    // Interference-limited branch. Written against erfcx so the
    // exp(omega^2 gamma^2) growth and the erfc decay cancel analytically
    // instead of overflowing into inf * 0.
    double limited;
    if (a + b >= 0.0) {
        limited = 0.5 * std::exp(-harvest_exponent - b * b) * erfcx(a + b);
    } else {
        limited = 0.5 * std::exp(-harvest_exponent + a * (a + 2.0 * b)) * std::erfc(a + b);
    }

    // Harvest-limited branch: fluctuation confined to [u_star, u].
    const double window = 0.5 * (phi(b) - phi(t.u_star / (2.0 * g.omega)));
    const double harvested = std::exp(-harvest_exponent) * window;

    const double value = limited + harvested;
    if (!std::isfinite(value) || value < -1e-9 || value > 1.0 + 1e-9) {
        throw NonConvergenceError("theta kernel: parameters outside the formula's numeric range");
    }
    return std::min(std::max(value, 0.0), 1.0);
}

HopGains relay_gains(const ChannelParams& c) {
    return {c.nu1, c.omega1, c.lambda1, c.nu2};
}

HopGains destination_gains(const ChannelParams& c) {
    return {c.nu2, c.omega2, c.lambda2, c.nu3};
}

}  // namespace

AsymptoticTerms asymptotic_terms(double gamma_th, const SystemParams& p) {
    const HopTerms r = hop_terms(gamma_th, p, relay_gains(p.channel));
    const HopTerms d = hop_terms(gamma_th, p, destination_gains(p.channel));
    return {r.gamma_rate, d.gamma_rate, r.u, r.u_star, d.u, d.u_star};
}

double theta_r(double gamma_th, const SystemParams& p) {
    return theta_kernel(gamma_th, p, relay_gains(p.channel));
}

double theta_d(double gamma_th, const SystemParams& p) {
    return theta_kernel(gamma_th, p, destination_gains(p.channel));
}

double outage_asymptotic(double gamma_th, const SystemParams& p) {
    return 1.0 - theta_r(gamma_th, p) * theta_d(gamma_th, p);
}

}  // namespace ehrelay
