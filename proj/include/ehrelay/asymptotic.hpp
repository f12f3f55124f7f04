#pragma once

#include "ehrelay/system_params.hpp"

namespace ehrelay {

// Composite rates and integration bounds of the closed-form large-system
// outage expression. u_*_star is always negative and u_* always exceeds
// it; the gamma rates vanish exactly when the SIR threshold is zero.
struct AsymptoticTerms {
    double gamma_r;
    double gamma_d;
    double u_r;
    double u_r_star;
    double u_d;
    double u_d_star;
};

AsymptoticTerms asymptotic_terms(double gamma_th, const SystemParams& p);

// Large-system success probabilities of the two hops. Both are the same
// kernel under the parameter substitution (nu1, omega1, lambda1, nu2) ->
// (nu2, omega2, lambda2, nu3), enforced structurally by sharing one
// implementation. Defined for all M, N >= 1; accurate only when both are
// large.
double theta_r(double gamma_th, const SystemParams& p);
double theta_d(double gamma_th, const SystemParams& p);

// Closed-form large-system outage 1 - theta_r * theta_d. The product
// form relies on the hops decoupling in the limit.
double outage_asymptotic(double gamma_th, const SystemParams& p);

}  // namespace ehrelay
