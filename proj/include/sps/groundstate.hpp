#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sps/functional.hpp"
#include "sps/grid.hpp"
#include "sps/logkernel.hpp"
#include "sps/nonlinearity.hpp"

namespace sps {

// Local minimization of J on S(c) within the kinetic ball A(u) <= rho_ball.
struct MinimizeConfig {
  double c = 0.05;
  double rho_ball = 0.5;  // 0 < rho < 1; requires c < rho
  NonlinearitySpec spec;
  double tau0 = 0.5;      // initial pseudo-time step
  double tol = 1e-6;      // Euler-Lagrange residual tolerance (relative)
  int max_iter = 50000;
  enum class Seed { Gaussian, File, RandomSmooth } seed = Seed::Gaussian;
  std::string seed_file;
  std::uint64_t rng_seed = 42;
  // Spectral preconditioner (1 + tau |k|^2)^-1 on the descent direction;
  // plain gradient steps are stable only for tau ~ 1/|k|^2_max and stall.
  bool precondition = true;
  bool interaction_off = false;  // diagnostic mode: drop the V term entirely
};

struct GroundStateResult {
  Field u_c;
  double gamma = 0.0;        // J(u_c)
  double lambda_c = 0.0;
  double A = 0.0;            // kinetic value
  double Q_residual = 0.0;   // |Q| / max(A, c^2)
  double el_residual = 0.0;  // ||G + lambda u||_2 / ||u||_2
  bool constraint_active = false;  // A within 1e-3 of rho_ball
  int iterations = 0;
  bool converged = false;
};

// Projected, normalized gradient descent: u <- normalize(u - tau * d) with
// d the (optionally preconditioned) multiplier-corrected gradient
// G(u) + lambda_est(u) u. Backtracking keeps J non-increasing and rejects
// steps leaving the kinetic ball. Throws on divergence; returns
// converged=false when max_iter is hit.
GroundStateResult minimize(const LogKernel& kernel, const MinimizeConfig& config);

// Same iteration started from a caller-supplied field (projected onto S(c));
// used for warm starts across sweeps.
GroundStateResult minimize_from(const LogKernel& kernel,
                                const MinimizeConfig& config, Field seed);

struct SweepRow {
  double c, gamma, A, lambda, Q_residual, el_residual;
  bool converged;
};

// Warm-started sweep over masses; rows sorted by c ascending.
std::vector<SweepRow> mass_sweep(const LogKernel& kernel,
                                 const std::vector<double>& c_list,
                                 MinimizeConfig config);

// J along the dilation fiber t -> t u_c(t .), evaluated through the exact
// scaling identities A(u_t) = t^2 A, V(u_t) = V - c^2 ln t and the substitute
// integral for F, so no resampling error enters. The endpoint t1 is doubled
// out from 2 until J(u_t1) < 0 and A(u_t1) > rho (the far side of the ball).
struct PathRecord {
  std::vector<double> t_samples;
  std::vector<double> J_values;
  double t_max = 1.0;   // argmax of J along the path
  double J_max = 0.0;   // path estimate of the minimax level
  double t1 = 1.0;
  double J_at_t1 = 0.0;
  bool t1_found = false;
};
PathRecord dilation_path(const LogKernel& kernel, const NonlinearitySpec& spec,
                         const Field& u_c, double rho_ball);

struct MpRow {
  double theta;
  double gamma;   // J(u_c) recomputed at this theta
  double m_hat;   // path maximum
  double bound;   // ((p-4)(1-c)+c^2)/(4(p-2))
  bool passes;    // gamma < m_hat < bound and J(t1) < 0
  bool converged;
};

// For each theta, recompute the constrained minimizer and the dilation-path
// level estimate against the closed-form bound.
std::vector<MpRow> mp_report(const LogKernel& kernel,
                             const std::vector<double>& theta_list,
                             MinimizeConfig config, int workers = 0);

}  // namespace sps
