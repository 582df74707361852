#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sps/grid.hpp"
#include "sps/logkernel.hpp"
#include "sps/quad.hpp"
#include "test_oracles.hpp"

using namespace sps;

TEST_CASE("cell average of the log kernel matches 2D quadrature") {
  // (1/h^2) int_cell ln|x| = ln h + C0; C0 by polar quadrature over an octant
  auto inner = [](double theta) {
    const double R = 0.5 / std::cos(theta);
    return R * R * (2.0 * std::log(R) - 1.0) / 4.0;
  };
  const double C0_quad =
      8.0 * integrate(inner, 0.0, std::numbers::pi / 4.0, 1e-14);
  CHECK(C0_quad == doctest::Approx(-1.0611754268825244).epsilon(1e-12));
  CHECK(log_cell_average(1.0) == doctest::Approx(C0_quad).epsilon(1e-12));
  CHECK(log_cell_average(0.25) ==
        doctest::Approx(std::log(0.25) + C0_quad).epsilon(1e-12));
}

TEST_CASE("corrected singular weight reproduces the lattice limit") {
  // [int ln|y| rho - h^2 sum_{m != 0} ln|hm| rho(hm)] / (h^2 rho(0)) -> weight
  const Grid2D g = build_grid(12.0, 512);
  const double h = g.cell();
  double sum = 0.0;
  for (int j = 0; j < g.n; ++j)
    for (int k = 0; k < g.n; ++k) {
      const double r = std::hypot(g.coord(j), g.coord(k));
      if (r > 0.0) sum += std::log(r) * std::exp(-r * r);
    }
  sum *= h * h;
  const double exact = oracles::kPi * oracles::gaussian_log_potential(0.0) /
                       oracles::kPi;  // w(0) for rho = e^{-r^2}
  const double weight_measured = (exact - sum) / (h * h);
  CHECK(weight_measured ==
        doctest::Approx(log_singular_weight(h)).epsilon(2e-4));
}

TEST_CASE("kernel small-argument and decay facts") {
  CHECK(std::log1p(1.0 / 20.0) < 0.05);  // remainder kernel at |x| = 20
  const Grid2D g = build_grid(12.0, 64);
  const LogKernel kernel(g);
  CHECK(kernel.singular_cell_value() ==
        doctest::Approx(log_singular_weight(g.cell())).epsilon(1e-14));
}

TEST_CASE("newtonian potential of zero density is zero") {
  const Grid2D g = build_grid(8.0, 32);
  const LogKernel kernel(g);
  const Field zero = gaussian_field(g, 0.0, 1.0);
  const Field w = kernel.newtonian_potential(zero);
  for (double v : w.values) CHECK(v == 0.0);
  CHECK(kernel.V(zero) == 0.0);
  CHECK(kernel.V1(zero) == 0.0);
  CHECK(kernel.V2(zero) == 0.0);
}

TEST_CASE("grid mismatch is rejected") {
  const LogKernel kernel(build_grid(8.0, 32));
  const Field other = gaussian_field(build_grid(8.0, 64), 1.0, 1.0);
  CHECK_THROWS_AS(kernel.newtonian_potential(other), std::invalid_argument);
}

TEST_CASE("gaussian potential against the closed-form radial solution") {
  const Grid2D g = build_grid(12.0, 256);
  const LogKernel kernel(g);
  const Field u = gaussian_field(g, 1.0, 1.0);
  Field rho(g);
  for (std::size_t i = 0; i < rho.values.size(); ++i)
    rho.values[i] = u.values[i] * u.values[i];
  const Field w = kernel.newtonian_potential(rho);
  for (double r : {0.0, 0.9375, 3.0}) {  // node-aligned radii
    const int j = g.n / 2 + static_cast<int>(std::llround(r / g.cell()));
    const double want = oracles::gaussian_log_potential(g.coord(j));
    CHECK(w.at(j, g.n / 2) ==
          doctest::Approx(want).epsilon(1e-3));  // comfortably ~1e-5
  }
}

TEST_CASE("radial oracle agrees with the closed form and rejects bad input") {
  std::vector<double> rs, ds;
  for (int i = 0; i < 4096; ++i) {
    const double r = 20.0 * i / 4095.0;
    rs.push_back(r);
    ds.push_back(std::exp(-r * r));
  }
  const auto w = radial_log_oracle(rs, ds, {0.0, 1.0, 3.0});
  CHECK(w[0] == doctest::Approx(-0.9066882461958017).epsilon(1e-7));
  CHECK(w[1] == doctest::Approx(0.3446074783062962).epsilon(1e-7));
  CHECK(w[2] == doctest::Approx(3.451411847481424).epsilon(1e-7));

  // point-mass limit: far field of a tight density of total mass M is M ln r
  std::vector<double> rs2, ds2;
  for (int i = 0; i < 2048; ++i) {
    const double r = 5.0 * i / 2047.0;
    rs2.push_back(r);
    ds2.push_back(std::exp(-r * r / (2 * 0.05 * 0.05)));
  }
  // total mass of e^{-r^2/(2 s0^2)} is 2 pi s0^2
  const double M = 2.0 * oracles::kPi * 0.05 * 0.05;
  const auto far = radial_log_oracle(rs2, ds2, {4.0});
  CHECK(far[0] == doctest::Approx(M * std::log(4.0)).epsilon(1e-4));

  // non-decaying density is refused
  std::vector<double> flat(rs.size(), 1.0);
  CHECK_THROWS_AS(radial_log_oracle(rs, flat, {1.0}), std::invalid_argument);
}

TEST_CASE("spectral convolution equals direct summation on a 24^2 grid") {
  const Grid2D g = build_grid(6.0, 16);  // power-of-two constraint; same O(n^4)
  const LogKernel kernel(g);
  const Field rho = smooth_random_field(g, 99, 0.5);
  Field rho2(g);
  for (std::size_t i = 0; i < rho.values.size(); ++i)
    rho2.values[i] = rho.values[i] * rho.values[i];
  const Field a = kernel.newtonian_potential(rho2);
  const Field b = direct_newtonian_potential(rho2);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
    den += b.values[i] * b.values[i];
  }
  CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("V of the unit gaussian matches its closed form") {
  const Grid2D g = build_grid(12.0, 256);
  const LogKernel kernel(g);
  const Field u = gaussian_field(g, 1.0, 1.0);
  CHECK(kernel.V(u) == doctest::Approx(oracles::gaussian_V()).epsilon(1e-5));
}

TEST_CASE("V dilation shift and decomposition") {
  const Grid2D g = build_grid(12.0, 256);
  const LogKernel kernel(g);
  const double amp = 1.0, width = 1.4;
  const Field u = gaussian_field(g, amp, width);
  const double V0 = kernel.V(u);
  const double c = mass(u);
  for (double t : {0.5, 2.0}) {
    const Field ut = gaussian_field(g, t * amp, width / t);  // exact dilation
    CHECK(kernel.V(ut) ==
          doctest::Approx(V0 - c * c * std::log(t)).epsilon(1e-3));
  }
  CHECK(kernel.V(u) == doctest::Approx(kernel.V1(u) - kernel.V2(u)).epsilon(1e-8));
  CHECK(kernel.V1(u) >= 0.0);
  CHECK(kernel.V2(u) >= 0.0);
}

TEST_CASE("V dilation shift through the interpolating dilation") {
  const Grid2D g = build_grid(16.0, 512);
  const LogKernel kernel(g);
  const Field u = gaussian_field(g, 1.0, 2.0);
  const double V0 = kernel.V(u);
  const double c = mass(u);
  for (double t : {0.7, 1.5}) {
    const Field ut = dilate(u, t).field;
    const double want = V0 - c * c * std::log(t);
    CHECK(kernel.V(ut) == doctest::Approx(want).epsilon(1e-3));
  }
}

TEST_CASE("bilinear forms: symmetry, identity, B1 vs V1") {
  const Grid2D g = build_grid(9.0, 64);
  const LogKernel kernel(g);
  const Field a = smooth_random_field(g, 5, 0.6);
  const Field b = smooth_random_field(g, 6, 0.6);
  for (BKind kind : {BKind::B0, BKind::B1, BKind::B2}) {
    const double ab = kernel.B_form(kind, a, b);
    const double ba = kernel.B_form(kind, b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-10));
  }
  const double b0 = kernel.B_form(BKind::B0, a, b);
  const double b1 = kernel.B_form(BKind::B1, a, b);
  const double b2 = kernel.B_form(BKind::B2, a, b);
  CHECK(b0 == doctest::Approx(b1 - b2).epsilon(1e-10));

  Field sq(g);
  for (std::size_t i = 0; i < sq.values.size(); ++i)
    sq.values[i] = a.values[i] * a.values[i];
  CHECK(kernel.B_form(BKind::B1, sq, sq) ==
        doctest::Approx(kernel.V1(a)).epsilon(1e-12));
}

TEST_CASE("V2 calibration produces positive finite constants") {
  const Grid2D g = build_grid(10.0, 64);
  const LogKernel kernel(g);
  std::vector<Field> corpus;
  corpus.push_back(gaussian_field(g, 1.0, 1.0));
  corpus.push_back(gaussian_field(g, 0.6, 1.8, {1.0, 0.5}));
  corpus.push_back(smooth_random_field(g, 3, 0.4));
  const V2Calibration cal = calibrate_v2_constant(kernel, corpus);
  CHECK(cal.K > 0.0);
  CHECK(cal.Kbar > 0.0);
  CHECK(std::isfinite(cal.K));
  // the two-step chain V2 <= Kbar ||u||_{8/3}^4 <= K A^{1/2} m^{3/2} holds
  for (const Field& u : corpus) {
    CHECK(kernel.V2(u) <=
          cal.Kbar * std::pow(lp_norm(u, 8.0 / 3.0), 4.0) + 1e-12);
  }
}
