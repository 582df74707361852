#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "sps/grid.hpp"
#include "sps/nonlinearity.hpp"
#include "sps/quad.hpp"
#include "test_oracles.hpp"

using namespace sps;

namespace {
const NonlinearitySpec exp_a3 = make_spec("exp_a", 3.0, 1.0, 1.0);
const NonlinearitySpec exp_b5 = make_spec("exp_b", 5.0, 1.0, 1.0);
const NonlinearitySpec pow5 = make_spec("power", 5.0, 1.0, 1.0);
}  // namespace

TEST_CASE("f and F vanish at zero for every kind") {
  for (const auto* s : {&exp_a3, &exp_b5, &pow5}) {
    CHECK(s->f(0.0) == 0.0);
    CHECK(s->F(0.0) == 0.0);
  }
}

TEST_CASE("exp_b closed form value at t = 1") {
  // (5 + 8 pi) e^{4 pi}
  const double want = (5.0 + 8.0 * std::numbers::pi) *
                      std::exp(4.0 * std::numbers::pi);
  CHECK(exp_b5.f(1.0) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("exp_a primitive matches quadrature of its derivative") {
  // F(0.5) for p = 3 equals int_0^0.5 s^2 e^{4 pi s^2} ds
  const double quad = integrate(
      [](double s) {
        return s * s * std::exp(4.0 * std::numbers::pi * s * s);
      },
      0.0, 0.5, 1e-14);
  CHECK(exp_a3.F(0.5) == doctest::Approx(quad).epsilon(1e-10));
  CHECK(quad == doctest::Approx(0.3685035879475886).epsilon(1e-12));
}

TEST_CASE("oddness, evenness and derivative consistency") {
  for (const auto* s : {&exp_a3, &exp_b5, &pow5}) {
    for (double t : {0.3, 0.9, 1.7}) {
      CHECK(s->f(-t) == doctest::Approx(-s->f(t)).epsilon(1e-14));
      CHECK(s->F(-t) == doctest::Approx(s->F(t)).epsilon(1e-14));
      const double eps = 1e-5;
      const double fd = (s->F(t + eps) - s->F(t - eps)) / (2 * eps);
      CHECK(fd == doctest::Approx(s->f(t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("amplitude cap raises range errors for exponential kinds") {
  CHECK_THROWS_AS(exp_b5.F(4.5), std::range_error);
  CHECK_THROWS_AS(exp_a3.f(-5.0), std::range_error);
  CHECK(pow5.F(10.0) > 0.0);  // power kind is uncapped
}

TEST_CASE("small-t limit of f(t)/t") {
  CHECK(check_f5(exp_a3).passed());
  CHECK(check_f5(exp_b5).passed());
  CHECK(check_f5(pow5).passed());
  // a power law with p = 2 has f(t)/t -> a, so the check must fail
  NonlinearitySpec p2 = pow5;
  p2.p = 2.0;
  CHECK(check_f5(p2).status == CheckStatus::Fail);
}

TEST_CASE("monotone quotient (t f - 2F)/|t|^beta") {
  CHECK(check_f6(exp_b5, exp_b5.p).passed());
  CHECK(check_f6(pow5, pow5.p).passed());
  // beta = p + 3 diverges at zero and must fail monotonicity
  CHECK(check_f6(exp_b5, exp_b5.p + 3.0).status == CheckStatus::Fail);
}

TEST_CASE("g function: identities and nonnegativity") {
  for (double v : {-1.5, -0.2, 0.0, 0.4, 2.0})
    CHECK(g_eval(exp_b5, 1.0, v, 5.0) == doctest::Approx(0.0).epsilon(1e-14));
  for (double t : {0.3, 0.8, 2.5})
    CHECK(g_eval(exp_b5, t, 0.0, 5.0) == 0.0);
  CHECK(g_eval(exp_b5, 0.5, 1.0, 5.0) >= 0.0);
  CHECK_THROWS_AS(g_eval(exp_b5, -1.0, 0.5, 5.0), std::invalid_argument);
  CHECK(check_g_nonneg(exp_b5, 5.0).passed());
}

TEST_CASE("h function: values and nonnegativity") {
  for (double p : {4.5, 5.0, 6.0})
    CHECK(h_eval(1.0, p) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h_eval(0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-14));  // p - 4
  CHECK(h_eval(2.0, 5.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK_THROWS_AS(h_eval(2.0, 3.0), std::invalid_argument);
  CHECK(check_h_nonneg(5.0).passed());
  CHECK(check_h_nonneg(4.5).passed());
}

TEST_CASE("F(t)/|t|^{p-1}t is nondecreasing for the stock kinds") {
  CHECK(check_F_ratio_monotone(exp_b5, 5.0).passed());
  CHECK(check_F_ratio_monotone(pow5, 5.0).passed());
  CHECK(check_F_ratio_monotone(exp_a3, 3.0).passed());
}

TEST_CASE("decay-order and critical-growth reports") {
  const CheckReport f2b = check_f2(exp_b5);
  CHECK(f2b.status == CheckStatus::ReportOnly);
  double decays = 0.0;
  for (const auto& [k, v] : f2b.measured)
    if (k == "decays") decays = v;
  CHECK(decays == 1.0);  // exp_b with p=5 decays past |t|^3.5

  const CheckReport f2a = check_f2(exp_a3);
  double decays_a = 1.0;
  for (const auto& [k, v] : f2a.measured)
    if (k == "decays") decays_a = v;
  CHECK(decays_a == 0.0);  // p = 3 does not decay past |t|^3.5

  CHECK(check_f1_witnesses(exp_a3).passed());
  CHECK(check_f1_witnesses(exp_b5).passed());

  const CheckReport lip = check_f7_lipschitz_ratio(exp_b5);
  CHECK(lip.status == CheckStatus::ReportOnly);
  for (const auto& [k, v] : lip.measured)
    if (k == "sup_ratio") CHECK(std::isfinite(v));
}

TEST_CASE("gauge invariance of the complex extension") {
  const std::complex<double> z(0.4, -0.7);
  for (double th : {0.3, 1.1, 2.9}) {
    const std::complex<double> rot = std::polar(1.0, th);
    const std::complex<double> a = exp_b5.f(rot * z);
    const std::complex<double> b = rot * exp_b5.f(z);
    CHECK(std::abs(a - b) < 1e-14 * std::abs(b));
  }
  CHECK(exp_b5.f(std::complex<double>(0.0, 0.0)) == std::complex<double>(0.0));
  // q(s) = f(s)/s
  CHECK(exp_b5.q(0.5) == doctest::Approx(exp_b5.f(0.5) / 0.5).epsilon(1e-14));
  CHECK(exp_b5.q(0.0) == 0.0);
}

TEST_CASE("moser-trudinger integral: zero, oracle, monotonicity, overflow") {
  const Grid2D g = build_grid(12.0, 256);
  const Field zero = gaussian_field(g, 0.0, 1.0);
  CHECK(moser_trudinger_integral(zero, 4.0) == 0.0);

  // small-amplitude gaussian vs radial quadrature
  const double amp = 0.3, alpha = 2.0;
  const Field u = gaussian_field(g, amp, 1.0);
  const double want =
      2.0 * std::numbers::pi *
      integrate_panels(
          [&](double r) {
            return std::expm1(alpha * amp * amp * std::exp(-r * r)) * r;
          },
          0.0, 25.0, 1e-12, 32);
  CHECK(moser_trudinger_integral(u, alpha) ==
        doctest::Approx(want).epsilon(1e-6));

  CHECK(moser_trudinger_integral(u, 2.0) < moser_trudinger_integral(u, 3.0));
  const Field big = gaussian_field(g, 30.0, 1.0);
  CHECK_THROWS_AS(moser_trudinger_integral(big, 4.0), std::range_error);
  CHECK_THROWS_AS(moser_trudinger_integral(u, -1.0), std::invalid_argument);
}

TEST_CASE("GN quotient: dilation invariance and gaussian value") {
  const Grid2D g = build_grid(12.0, 256);
  const double amp = 0.8, width = 1.2;
  const Field u = gaussian_field(g, amp, width);
  const double base = gn_check(u, 4.0);
  for (double t : {0.6, 1.4}) {
    const Field ut = gaussian_field(g, t * amp, width / t);
    CHECK(gn_check(ut, 4.0) == doctest::Approx(base).epsilon(1e-6));
  }
  // closed forms for gaussians: ||u||_4^4 = a^4 pi w^2 / 2, A = pi a^2,
  // mass = pi a^2 w^2, so the quotient is 1/(2 pi)
  CHECK(base == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-8));
  // the quotient is degree-zero in the amplitude as well
  const Field u2 = gaussian_field(g, 2.0 * amp, width);
  CHECK(gn_check(u2, 4.0) == doctest::Approx(base).epsilon(1e-10));

  const Field zero = gaussian_field(g, 0.0, 1.0);
  CHECK_THROWS_AS(gn_check(zero, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(gn_check(u, 2.0), std::invalid_argument);
}

TEST_CASE("spec construction contracts") {
  CHECK_THROWS_AS(make_spec("exp_a", 2.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_spec("exp_b", 4.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_spec("exp_b", 5.0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_spec("cubic", 3.0, 1.0, 1.0), std::invalid_argument);
  CHECK(make_spec("power", 5.0, 1.0, 2.0).kind_name() == "power");
}
