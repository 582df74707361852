#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "sps/dynamics.hpp"
#include "sps/groundstate.hpp"
#include "test_oracles.hpp"

using namespace sps;

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

EvolutionConfig base_config() {
  EvolutionConfig cfg;
  cfg.gamma = kTwoPi;
  cfg.dt = 1e-3;
  cfg.spec = make_spec("exp_b", 5.0, 1.0, 1.0);
  return cfg;
}

CField to_complex(const Field& u) {
  CField psi(u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    psi.values[i] = u.values[i];
  return psi;
}

}  // namespace

TEST_CASE("free single fourier mode propagates with its exact phase") {
  const Grid2D g = build_grid(8.0, 64);
  const LogKernel kernel(g);
  EvolutionConfig cfg = base_config();
  cfg.gamma = 0.0;
  cfg.spec = make_spec("power", 5.0, 1.0, 0.0);  // f = 0
  cfg.dt = 1e-2;

  const double kx = g.wavenumber(5), ky = g.wavenumber(2);
  CField psi(g);
  for (int j = 0; j < g.n; ++j)
    for (int k = 0; k < g.n; ++k)
      psi.at(j, k) =
          std::polar(0.3, kx * g.coord(j) + ky * g.coord(k));
  const CField psi0 = psi;

  const int steps = 50;
  evolve(kernel, psi, cfg, steps);
  const double T = steps * cfg.dt;
  const std::complex<double> expected_phase =
      std::polar(1.0, -(kx * kx + ky * ky) * T);
  for (std::size_t i = 0; i < psi.values.size(); i += 97) {
    const std::complex<double> want = psi0.values[i] * expected_phase;
    CHECK(std::abs(psi.values[i] - want) < 1e-12);
  }
}

TEST_CASE("mass is conserved to roundoff over a thousand steps") {
  const Grid2D g = build_grid(12.0, 128);
  const LogKernel kernel(g);
  EvolutionConfig cfg = base_config();
  CField psi = to_complex(gaussian_field(g, 0.2, 1.5));
  const double m0 = mass(psi);
  const TrajectoryRecord rec = evolve(kernel, psi, cfg, 1000, nullptr);
  for (double m : rec.mass_series)
    CHECK(std::abs(m - m0) / m0 < 1e-11);
}

TEST_CASE("gauge covariance: a global phase rides along exactly") {
  const Grid2D g = build_grid(12.0, 64);
  const LogKernel kernel(g);
  EvolutionConfig cfg = base_config();
  CField a = to_complex(gaussian_field(g, 0.2, 1.2));
  CField b = a;
  const std::complex<double> rot = std::polar(1.0, 0.7);
  for (auto& z : b.values) z *= rot;
  evolve(kernel, a, cfg, 20);
  evolve(kernel, b, cfg, 20);
  for (std::size_t i = 0; i < a.values.size(); i += 71)
    CHECK(std::abs(b.values[i] - rot * a.values[i]) < 1e-13);
}

TEST_CASE("time reversal returns the initial state") {
  const Grid2D g = build_grid(12.0, 64);
  const LogKernel kernel(g);
  EvolutionConfig fwd = base_config();
  CField psi = to_complex(gaussian_field(g, 0.25, 1.3));
  const CField psi0 = psi;
  evolve(kernel, psi, fwd, 50);
  EvolutionConfig bwd = fwd;
  bwd.dt = -fwd.dt;
  evolve(kernel, psi, bwd, 50);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    num += std::norm(psi.values[i] - psi0.values[i]);
    den += std::norm(psi0.values[i]);
  }
  CHECK(std::sqrt(num / den) < 1e-8);
}

TEST_CASE("direct and split potential assemblies agree") {
  const Grid2D g = build_grid(12.0, 128);
  const LogKernel kernel(g);
  const CField psi = to_complex(smooth_random_field(g, 17, 0.3));
  const Field wa = assemble_potential(kernel, psi, kTwoPi, PotentialMode::Direct);
  const Field wb =
      assemble_potential(kernel, psi, kTwoPi, PotentialMode::SplitLinear);
  double scale = 0.0;
  for (double v : wa.values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < wa.values.size(); ++i)
    CHECK(std::abs(wa.values[i] - wb.values[i]) <= 1e-9 * scale);

  const CField zero(g);
  const Field wz = assemble_potential(kernel, zero, kTwoPi, PotentialMode::Direct);
  for (double v : wz.values) CHECK(v == 0.0);
}

TEST_CASE("potential of a gaussian density matches the radial oracle") {
  const Grid2D g = build_grid(12.0, 256);
  const LogKernel kernel(g);
  const CField psi = to_complex(gaussian_field(g, 1.0, 1.0));
  const Field gw = assemble_potential(kernel, psi, kTwoPi, PotentialMode::Direct);
  // gamma w = -(gamma/2pi)(ln * rho) = -(ln * rho) at gamma = 2pi
  for (double r : {0.0, 0.9375, 3.0}) {
    const int j = g.n / 2 + static_cast<int>(std::llround(r / g.cell()));
    const double want = -oracles::gaussian_log_potential(g.coord(j));
    CHECK(gw.at(j, g.n / 2) == doctest::Approx(want).epsilon(1e-3));
  }
}

TEST_CASE("trajectories in the two potential modes coincide") {
  const Grid2D g = build_grid(12.0, 64);
  const LogKernel kernel(g);
  EvolutionConfig da = base_config();
  EvolutionConfig db = base_config();
  db.mode = PotentialMode::SplitLinear;
  CField a = to_complex(gaussian_field(g, 0.2, 1.4));
  CField b = a;
  evolve(kernel, a, da, 100);
  evolve(kernel, b, db, 100);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(a.values[i]);
  }
  CHECK(std::sqrt(num / den) < 1e-8);
}

TEST_CASE("single unfused step equals the fused loop") {
  const Grid2D g = build_grid(12.0, 64);
  const LogKernel kernel(g);
  EvolutionConfig cfg = base_config();
  CField a = to_complex(gaussian_field(g, 0.25, 1.2));
  CField b = a;
  for (int i = 0; i < 10; ++i) step(kernel, a, cfg);
  evolve(kernel, b, cfg, 10);
  for (std::size_t i = 0; i < a.values.size(); i += 53)
    CHECK(std::abs(a.values[i] - b.values[i]) < 1e-12);
}

TEST_CASE("blow-up guard raises a range error") {
  const Grid2D g = build_grid(8.0, 32);
  const LogKernel kernel(g);
  EvolutionConfig cfg = base_config();
  CField psi = to_complex(gaussian_field(g, 10.0, 1.0));  // beyond the cap
  CHECK_THROWS_AS(step(kernel, psi, cfg), std::range_error);
}

TEST_CASE("dist_to_orbit: modulation invariance and orthogonal bump") {
  const Grid2D g = build_grid(12.0, 128);
  const Field u = gaussian_field(g, 0.5, 1.2);

  CHECK(dist_to_orbit(to_complex(u), u) < 1e-10);

  // phase times grid translation is still on the orbit
  CField mod = to_complex(circular_shift(u, 7, -5));
  const std::complex<double> rot = std::polar(1.0, 1.234);
  for (auto& z : mod.values) z *= rot;
  CHECK(dist_to_orbit(mod, u) < 1e-10);

  // a far-away bump adds roughly its own X norm
  const Field bump = gaussian_field(g, 0.05, 0.7, {6.0, 6.0});
  CField sum = to_complex(u);
  for (std::size_t i = 0; i < sum.values.size(); ++i)
    sum.values[i] += bump.values[i];
  const double d = dist_to_orbit(sum, u);
  const double want = std::sqrt(x_norm_sq(bump));
  CHECK(d == doctest::Approx(want).epsilon(0.05));
}

TEST_CASE("energy drift shrinks fourfold when dt is halved") {
  const Grid2D g = build_grid(12.0, 64);
  const LogKernel kernel(g);
  CField psi0(g);
  {
    const Field bump = gaussian_field(g, 0.22, 1.5, {0.5, 0.0});
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k)
        psi0.at(j, k) = bump.at(j, k) * std::polar(1.0, 0.3 * g.coord(j));
  }
  auto drift_at = [&](double dt) {
    EvolutionConfig cfg = base_config();
    cfg.dt = dt;
    cfg.record_every = 50;
    CField psi = psi0;
    const double E0 = evolution_energy(kernel, psi, cfg.gamma, cfg.spec);
    const TrajectoryRecord rec =
        evolve(kernel, psi, cfg, static_cast<int>(std::llround(0.5 / dt)));
    double d = 0.0;
    for (double e : rec.energy_series) d = std::max(d, std::abs(e - E0));
    return d;
  };
  const double d1 = drift_at(1e-3);
  const double d2 = drift_at(5e-4);
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("standing wave from a converged minimizer stays put") {
  const Grid2D g = build_grid(16.0, 64);
  const LogKernel kernel(g);
  MinimizeConfig mcfg;
  mcfg.c = 0.3;
  mcfg.rho_ball = 0.8;
  mcfg.spec = make_spec("exp_b", 5.0, 1.0, 1.0);
  const GroundStateResult gs = minimize(kernel, mcfg);
  REQUIRE(gs.converged);

  EvolutionConfig cfg = base_config();
  cfg.T = 1.0;
  cfg.record_every = 100;
  const StandingWaveReport rep =
      standing_wave_test(kernel, gs.u_c, gs.lambda_c, cfg);
  CHECK(rep.max_modulated_err <= 1e-4 * std::sqrt(mcfg.c));
  CHECK(rep.phase_rate_err <= 1e-3);
  // t = 0 sample is exactly on the orbit
  CHECK(rep.traj.dist_series.front() == 0.0);
}

TEST_CASE("stability trials are deterministic and bounded for tiny delta") {
  const Grid2D g = build_grid(16.0, 64);
  const LogKernel kernel(g);
  MinimizeConfig mcfg;
  mcfg.c = 0.3;
  mcfg.rho_ball = 0.8;
  mcfg.spec = make_spec("exp_b", 5.0, 1.0, 1.0);
  const GroundStateResult gs = minimize(kernel, mcfg);
  REQUIRE(gs.converged);

  EvolutionConfig cfg = base_config();
  cfg.record_every = 25;
  const auto a = stability_experiment(kernel, gs.u_c, {1e-3}, 2, 0.5, cfg, 42, 2);
  const auto b = stability_experiment(kernel, gs.u_c, {1e-3}, 2, 0.5, cfg, 42, 2);
  REQUIRE(a.size() == 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sup_dist == b[i].sup_dist);
    CHECK(a[i].end_dist == b[i].end_dist);
  }
  const double ref = std::sqrt(x_norm_sq(gs.u_c));
  for (const auto& t : a) {
    CHECK(t.sup_dist <= 20.0 * t.delta * ref);
    CHECK(!t.monotone_growth);
  }
}
