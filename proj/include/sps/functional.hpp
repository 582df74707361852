#pragma once

#include "sps/grid.hpp"
#include "sps/logkernel.hpp"
#include "sps/nonlinearity.hpp"
#include "sps/report.hpp"

namespace sps {

// J(u) = 1/2 A(u) + 1/4 V(u) - int F(u), split into its three parts.
struct EnergyBreakdown {
  double kinetic = 0.0;      // A(u)/2
  double interaction = 0.0;  // V(u)/4
  double potential = 0.0;    // -int F(u)
  double total = 0.0;
  double c = 0.0;  // mass of u
};

EnergyBreakdown J_eval(const LogKernel& kernel, const NonlinearitySpec& spec,
                       const Field& u);

// Multiplier-free gradient G(u) = -Lap u + (ln|.| * u^2) u - f(u), so that
// d/de J(u + e v)|_0 = <G(u), v> for all v.
Field gradJ(const LogKernel& kernel, const NonlinearitySpec& spec,
            const Field& u);

// Q(u) = A(u) - 1/4 ||u||_2^4 + int (2F(u) - f(u)u); vanishes on solutions
// of the stationary equation (scaling identity), used as a residual.
double Q_eval(const LogKernel& kernel, const NonlinearitySpec& spec,
              const Field& u);

// lambda = (int f(u)u - A(u) - V(u)) / mass(u)
double lambda_est(const LogKernel& kernel, const NonlinearitySpec& spec,
                  const Field& u);

// Fiber map Phi(t) = t^2/2 A(u) - t^-2 int F(tu)
double phi_eval(const NonlinearitySpec& spec, const Field& u, double t);

// J(u) - Phi(t) >= (1-t^{p-2})/(p-2) Q + h(t)/(2(p-2)) A
//                  - K/4 ||u||_2^3 A^{1/2} + (1-t^{p-2})/(4(p-2)) ||u||_2^4
// with the empirically calibrated K; report-only.
CheckReport fiber_gap_check(const LogKernel& kernel,
                            const NonlinearitySpec& spec, const Field& u,
                            double t, double p, double K);

// Closed-form bounds for the local minimum level and the minimax level.
double gamma_upper_bound(double c);            // c/2 + sqrt(pi) c^3 / 4
double mc_upper_bound(double c, double p);     // ((p-4)(1-c)+c^2) / (4(p-2))

// theta0 = (A / ((p-2) ||u||_p^p)) * (2A / D)^{(p-4)/2} with
// D = 1 - c + (1 - 2(p-2)||u||_*^2) c^2 / (p-4); requires D > 0.
double theta0(const Field& u_c, double c, double p);

}  // namespace sps
