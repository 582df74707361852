#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sps/groundstate.hpp"
#include "test_oracles.hpp"

using namespace sps;

namespace {

// Fast desk configuration: moderate mass on a small box so a full solve
// takes well under a second.
MinimizeConfig fast_config() {
  MinimizeConfig cfg;
  cfg.c = 0.3;
  cfg.rho_ball = 0.8;
  cfg.spec = make_spec("exp_b", 5.0, 1.0, 1.0);
  cfg.tol = 1e-6;
  return cfg;
}

}  // namespace

TEST_CASE("minimize converges on a small box and meets its contracts") {
  const Grid2D g = build_grid(16.0, 64);
  const LogKernel kernel(g);
  const MinimizeConfig cfg = fast_config();
  const GroundStateResult r = minimize(kernel, cfg);

  CHECK(r.converged);
  CHECK(r.el_residual <= 10.0 * cfg.tol);
  CHECK(mass(r.u_c) == doctest::Approx(cfg.c).epsilon(1e-10));
  CHECK(r.A < cfg.rho_ball);
  CHECK(!r.constraint_active);
  CHECK(r.gamma <= gamma_upper_bound(cfg.c));
  CHECK(r.gamma > 0.0);
  CHECK(r.Q_residual < 1e-3);
  CHECK(r.lambda_c < 0.0);

  // gamma equals a fresh J evaluation of the returned field
  const EnergyBreakdown e = J_eval(kernel, cfg.spec, r.u_c);
  CHECK(e.total == doctest::Approx(r.gamma).epsilon(1e-10));
}

TEST_CASE("same seed gives bit-identical results") {
  const Grid2D g = build_grid(16.0, 64);
  const LogKernel kernel(g);
  MinimizeConfig cfg = fast_config();
  cfg.seed = MinimizeConfig::Seed::RandomSmooth;
  cfg.rng_seed = 77;
  const GroundStateResult a = minimize(kernel, cfg);
  const GroundStateResult b = minimize(kernel, cfg);
  CHECK(a.gamma == b.gamma);
  CHECK(a.lambda_c == b.lambda_c);
  CHECK(a.u_c.values == b.u_c.values);
}

TEST_CASE("config contracts") {
  const Grid2D g = build_grid(16.0, 64);
  const LogKernel kernel(g);
  MinimizeConfig cfg = fast_config();
  cfg.c = 0.9;  // >= rho
  CHECK_THROWS_AS(minimize(kernel, cfg), std::invalid_argument);
  cfg = fast_config();
  cfg.rho_ball = 1.5;
  CHECK_THROWS_AS(minimize(kernel, cfg), std::invalid_argument);
}

TEST_CASE("pure kinetic flow relaxes to the flat mode") {
  // With f = 0 and the interaction disabled the constrained minimum of the
  // Dirichlet energy on the torus is the constant, so A -> 0 and J -> 0+.
  const Grid2D g = build_grid(16.0, 64);
  const LogKernel kernel(g);
  MinimizeConfig cfg = fast_config();
  cfg.spec = make_spec("power", 5.0, 1.0, 0.0);
  cfg.interaction_off = true;
  cfg.tol = 1e-8;
  const GroundStateResult r = minimize(kernel, cfg);
  CHECK(r.converged);
  CHECK(r.A < 1e-8);
  CHECK(r.gamma >= 0.0);
  CHECK(r.gamma < 1e-8);
}

TEST_CASE("warm-started mass sweep produces monotone columns") {
  const Grid2D g = build_grid(16.0, 64);
  const LogKernel kernel(g);
  MinimizeConfig cfg = fast_config();
  const std::vector<double> cs = {0.3, 0.2, 0.1};
  const auto rows = mass_sweep(kernel, cs, cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].c < rows[1].c);  // sorted ascending
  for (const auto& row : rows) CHECK(row.converged);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].gamma > rows[i - 1].gamma);
    CHECK(rows[i].A > rows[i - 1].A);
    CHECK(rows[i].gamma <= gamma_upper_bound(rows[i].c));
  }
}

TEST_CASE("dilation path: endpoints and level estimate") {
  const Grid2D g = build_grid(16.0, 64);
  const LogKernel kernel(g);
  MinimizeConfig cfg = fast_config();
  const GroundStateResult r = minimize(kernel, cfg);
  REQUIRE(r.converged);

  const PathRecord path = dilation_path(kernel, cfg.spec, r.u_c, cfg.rho_ball);
  REQUIRE(path.t1_found);
  CHECK(path.t_samples.front() == doctest::Approx(1.0));
  // J at t = 1 is the ground level
  CHECK(path.J_values.front() == doctest::Approx(r.gamma).epsilon(1e-8));
  CHECK(path.J_at_t1 < 0.0);
  CHECK(path.t1 * path.t1 * r.A > cfg.rho_ball);  // endpoint left the ball
  CHECK(path.J_max >= r.gamma);
  CHECK(path.t_max > 1.0);
}

TEST_CASE("mp_report with theta above the threshold passes the level bound") {
  // The small-mass regime needs room: the minimizer's length scale is about
  // 2/sqrt(c), so this runs on a wider (still coarse) box.
  const Grid2D g = build_grid(32.0, 128);
  const LogKernel kernel(g);
  MinimizeConfig cfg = fast_config();
  cfg.c = 0.05;
  cfg.rho_ball = 0.5;
  const GroundStateResult base = minimize(kernel, cfg);
  REQUIRE(base.converged);
  const double th0 = theta0(base.u_c, cfg.c, cfg.spec.p);
  CHECK(th0 > 0.0);

  const auto rows = mp_report(kernel, {2.0 * th0}, cfg, 2);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].converged);
  CHECK(rows[0].passes);
  CHECK(rows[0].gamma < rows[0].m_hat);
  CHECK(rows[0].m_hat < rows[0].bound);
}
