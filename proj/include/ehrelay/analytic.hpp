#pragma once

#include "ehrelay/quadrature.hpp"
#include "ehrelay/system_params.hpp"

namespace ehrelay {

// Conditional success kernels of the two hops, all conditioned on the
// aggregate primary power z2 received at the relay. The relay hop splits
// on whether the source is harvest-limited or interference-limited:
//
//   j_r_i  = Pr{ X1 >= z2*g/(Z1*rho),  Y1 <= P_I/(Z1*rho) }
//   j_r_ii = Pr{ X1 >= Y1*z2*g/P_I,    Z1 >= P_I/(Y1*rho) }
//
// and the destination hop analogously on the relay's power constraint:
//
//   j_d_i  = Pr{ X2 >= g*Z3/(z2*rho),  Y2 <= P_I/(z2*rho) }   (closed form)
//   j_d_ii = Pr{ X2 >= g*Y2*Z3/P_I,    Y2 >= P_I/(z2*rho) }
//
// with g the SIR threshold. Each evaluates to a probability in [0,1].
double j_r_i(double z2, double gamma_th, const SystemParams& p, const QuadratureSettings& q);
double j_r_ii(double z2, double gamma_th, const SystemParams& p, const QuadratureSettings& q);
double j_d_i(double z2, double gamma_th, const SystemParams& p);
double j_d_ii(double z2, double gamma_th, const SystemParams& p, const QuadratureSettings& q);

// Exact outage probability of the two-hop link:
//
//   P_out(g) = 1 - Int_0^inf (j_r_i + j_r_ii)(j_d_i + j_d_ii) f_{Z2}(z2) dz2.
//
// Inner kernels run at 10x tighter tolerance than the outer integral and
// are evaluated once per outer node. A result outside [0,1] by more than
// ten times the tolerance raises NonConvergenceError instead of being
// clamped silently.
double outage_exact(double gamma_th, const SystemParams& p, const QuadratureSettings& q);

}  // namespace ehrelay
