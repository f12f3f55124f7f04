#include "ehrelay/analytic.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "ehrelay/distributions.hpp"
#include "ehrelay/special_functions.hpp"

namespace ehrelay {

namespace {

// Integrate f over [lower, inf) after rescaling by a characteristic
// width, so the mapped mass sits near the middle of the unit interval
// instead of crowding the u -> 1 end when the width is far from one.
template <class F>
IntegralEstimate integrate_tail(F&& f, double lower, double width,
                                const QuadratureSettings& q) {
    auto scaled = [&f, lower, width](double w) { return width * f(lower + width * w); };
    return integrate_semi_infinite(scaled, 0.0, q);
}

double checked_probability(IntegralEstimate est, const QuadratureSettings& q, const char* what) {
    if (!est.converged) {
        throw NonConvergenceError(std::string(what) + ": quadrature did not converge (error estimate " +
                                  std::to_string(est.error_estimate) + ")");
    }
    const double slack = 10.0 * std::max(q.abs_tol, q.rel_tol);
    if (est.value < -slack || est.value > 1.0 + slack) {
        throw NonConvergenceError(std::string(what) + ": probability out of range: " +
                                  std::to_string(est.value));
    }
    return std::min(std::max(est.value, 0.0), 1.0);
}

void require_nonnegative_threshold(double gamma_th) {
    if (!(gamma_th >= 0.0)) throw std::invalid_argument("SIR threshold must be >= 0");
}

}  // namespace

double j_r_i(double z2, double gamma_th, const SystemParams& p, const QuadratureSettings& q) {
    require_nonnegative_threshold(gamma_th);
    if (!(z2 >= 0.0)) throw std::invalid_argument("j_r_i: z2 must be >= 0");
    const double rho = p.rho();
    const ErlangPdf z1_pdf{ErlangSpec(p.n_transmitters, p.p_putx * p.channel.nu1)};
    const double signal_coeff = z2 * gamma_th / (rho * p.channel.lambda1);
    const double guard_coeff = p.p_interference / (rho * p.channel.omega1);
    const int m = p.m_receivers;

    auto integrand = [&](double z1) {
        const double success = signal_coeff == 0.0 ? 1.0 : std::exp(-signal_coeff / z1);
        const double guard = std::pow(-std::expm1(-guard_coeff / z1), m);
        return success * guard * z1_pdf(z1);
    };
    const double width = p.n_transmitters * p.p_putx * p.channel.nu1;
    return checked_probability(integrate_tail(integrand, 0.0, width, q), q, "j_r_i");
}

double j_r_ii(double z2, double gamma_th, const SystemParams& p, const QuadratureSettings& q) {
    require_nonnegative_threshold(gamma_th);
    if (!(z2 >= 0.0)) throw std::invalid_argument("j_r_ii: z2 must be >= 0");
    const double rho = p.rho();
    const MaxExpPdf y1_pdf{MaxExpSpec(p.m_receivers, p.channel.omega1)};
    const double signal_coeff = z2 * gamma_th / (p.p_interference * p.channel.lambda1);
    const double harvest_coeff = p.p_interference / (rho * p.p_putx * p.channel.nu1);
    const int n = p.n_transmitters;

    auto integrand = [&](double y1) {
        const double x = harvest_coeff / y1;
        // Survival of the Erlang aggregate: the harvest branch only loses
        // the min() when Z1 exceeds P_I/(Y1*rho).
        const double harvest_ok = std::isinf(x) ? 0.0 : gamma_q(n, x);
        if (harvest_ok == 0.0) return 0.0;
        return std::exp(-signal_coeff * y1) * harvest_ok * y1_pdf(y1);
    };
    const double width = p.channel.omega1 * (1.0 + std::log(static_cast<double>(p.m_receivers)));
    return checked_probability(integrate_tail(integrand, 0.0, width, q), q, "j_r_ii");
}

double j_d_i(double z2, double gamma_th, const SystemParams& p) {
    require_nonnegative_threshold(gamma_th);
    if (!(z2 > 0.0)) throw std::invalid_argument("j_d_i: z2 must be > 0");
    const double rho = p.rho();
    // Pr{Y2 <= P_I/(z2 rho)} * Pr{X2 >= gamma Z3/(z2 rho)}; the second
    // factor is the Erlang Laplace transform (1 + s*scale)^(-N).
    const double log_guard =
        p.m_receivers * std::log(-std::expm1(-p.p_interference / (z2 * rho * p.channel.omega2)));
    const double log_signal =
        -p.n_transmitters *
        std::log1p(p.p_putx * p.channel.nu3 * gamma_th / (rho * z2 * p.channel.lambda2));
    return std::exp(log_guard + log_signal);
}

double j_d_ii(double z2, double gamma_th, const SystemParams& p, const QuadratureSettings& q) {
    require_nonnegative_threshold(gamma_th);
    if (!(z2 > 0.0)) throw std::invalid_argument("j_d_ii: z2 must be > 0");
    const double rho = p.rho();
    const MaxExpPdf y2_pdf{MaxExpSpec(p.m_receivers, p.channel.omega2)};
    const double interference_coeff =
        gamma_th * p.p_putx * p.channel.nu3 / (p.p_interference * p.channel.lambda2);
    const int n = p.n_transmitters;
    const double lower = p.p_interference / (rho * z2);

    auto integrand = [&](double y2) {
        const double log_signal = -n * std::log1p(interference_coeff * y2);
        return std::exp(log_signal) * y2_pdf(y2);
    };
    const double width = p.channel.omega2 * (1.0 + std::log(static_cast<double>(p.m_receivers)));
    return checked_probability(integrate_tail(integrand, lower, width, q), q, "j_d_ii");
}

double outage_exact(double gamma_th, const SystemParams& p, const QuadratureSettings& q) {
    require_nonnegative_threshold(gamma_th);
    q.validate();
    const QuadratureSettings inner = q.tightened();
    const ErlangPdf z2_pdf{ErlangSpec(p.n_transmitters, p.p_putx * p.channel.nu2)};

    // The four kernels are functions of the outer node alone; cache the
    // per-node product so tolerance-refinement passes reuse it.
    std::unordered_map<std::uint64_t, double> node_cache;
    auto integrand = [&](double z2) {
        const auto key = std::bit_cast<std::uint64_t>(z2);
        if (auto it = node_cache.find(key); it != node_cache.end()) return it->second;
        const double relay_hop = j_r_i(z2, gamma_th, p, inner) + j_r_ii(z2, gamma_th, p, inner);
        const double dest_hop = j_d_i(z2, gamma_th, p) + j_d_ii(z2, gamma_th, p, inner);
        const double value = relay_hop * dest_hop * z2_pdf(z2);
        node_cache.emplace(key, value);
        return value;
    };

    const double width = p.n_transmitters * p.p_putx * p.channel.nu2;
    const IntegralEstimate est = integrate_tail(integrand, 0.0, width, q);
    if (!est.converged) {
        throw NonConvergenceError("outage_exact: outer integral did not converge (error estimate " +
                                  std::to_string(est.error_estimate) + ")");
    }
    const double outage = 1.0 - est.value;
    const double slack = 10.0 * std::max(q.abs_tol, q.rel_tol);
    if (outage < -slack || outage > 1.0 + slack) {
        throw NonConvergenceError("outage_exact: result out of range: " + std::to_string(outage));
    }
    return std::min(std::max(outage, 0.0), 1.0);
}

}  // namespace ehrelay
