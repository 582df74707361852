#include "sps/nonlinearity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sps {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kEightPi = 8.0 * std::numbers::pi;

void check_range(const NonlinearitySpec& spec, double t) {
  if (spec.kind == NonlinKind::Power) return;
  if (std::abs(t) > spec.amplitude_cap)
    throw std::range_error("nonlinearity evaluated beyond its amplitude cap");
}

// F for ExpA has no closed form; absolutely convergent series
//   F(t) = sum_k (4 pi)^k |t|^(p+2k) / (k! (p+2k))
// truncated at relative 1e-16.
double F_series_exp_a(double p, double t) {
  const double at = std::abs(t);
  if (at == 0.0) return 0.0;
  double term = std::pow(at, p);  // (4pi)^k |t|^(p+2k) / k!
  double sum = term / p;
  for (int k = 1; k < 400; ++k) {
    term *= kFourPi * at * at / k;
    const double contrib = term / (p + 2 * k);
    sum += contrib;
    if (contrib < 1e-16 * sum) break;
  }
  return sum;
}

}  // namespace

double NonlinearitySpec::f(double t) const {
  check_range(*this, t);
  switch (kind) {
    case NonlinKind::ExpA:
      return std::pow(std::abs(t), p - 2.0) * t * std::exp(kFourPi * t * t);
    case NonlinKind::ExpB: {
      const double at = std::abs(t);
      return theta * (p * std::pow(at, p - 2.0) * t + kEightPi * std::pow(at, p) * t) *
             std::exp(kFourPi * t * t);
    }
    case NonlinKind::Power:
      return a * std::pow(std::abs(t), p - 2.0) * t;
  }
  return 0.0;
}

double NonlinearitySpec::F(double t) const {
  check_range(*this, t);
  switch (kind) {
    case NonlinKind::ExpA:
      return F_series_exp_a(p, t);
    case NonlinKind::ExpB:
      return theta * std::pow(std::abs(t), p) * std::exp(kFourPi * t * t);
    case NonlinKind::Power:
      return a / p * std::pow(std::abs(t), p);
  }
  return 0.0;
}

double NonlinearitySpec::q(double s) const {
  if (s == 0.0) return 0.0;
  check_range(*this, s);
  switch (kind) {
    case NonlinKind::ExpA:
      return std::pow(s, p - 2.0) * std::exp(kFourPi * s * s);
    case NonlinKind::ExpB:
      return theta * (p * std::pow(s, p - 2.0) + kEightPi * std::pow(s, p)) *
             std::exp(kFourPi * s * s);
    case NonlinKind::Power:
      return a * std::pow(s, p - 2.0);
  }
  return 0.0;
}

std::complex<double> NonlinearitySpec::f(std::complex<double> z) const {
  const double s = std::abs(z);
  if (s == 0.0) return {0.0, 0.0};
  return q(s) * z;
}

std::string NonlinearitySpec::kind_name() const {
  switch (kind) {
    case NonlinKind::ExpA:
      return "exp_a";
    case NonlinKind::ExpB:
      return "exp_b";
    case NonlinKind::Power:
      return "power";
  }
  return "?";
}

NonlinearitySpec make_spec(const std::string& kind, double p, double theta,
                           double a) {
  NonlinearitySpec spec;
  if (kind == "exp_a") {
    spec.kind = NonlinKind::ExpA;
    if (p <= 2.0) throw std::invalid_argument("exp_a requires p > 2");
  } else if (kind == "exp_b") {
    spec.kind = NonlinKind::ExpB;
    if (p <= 4.0) throw std::invalid_argument("exp_b requires p > 4");
    if (theta <= 0.0) throw std::invalid_argument("exp_b requires theta > 0");
  } else if (kind == "power") {
    spec.kind = NonlinKind::Power;
  } else {
    throw std::invalid_argument("unknown nonlinearity kind: " + kind);
  }
  spec.p = p;
  spec.theta = theta;
  spec.a = a;
  return spec;
}

double g_eval(const NonlinearitySpec& spec, double t, double v, double p) {
  if (t <= 0.0) throw std::invalid_argument("g_eval: t must be positive");
  return spec.F(t * v) / (t * t) - spec.F(v) +
         (1.0 - std::pow(t, p - 2.0)) / (p - 2.0) *
             (spec.f(v) * v - 2.0 * spec.F(v));
}

double h_eval(double t, double p) {
  if (t < 0.0) throw std::invalid_argument("h_eval: t must be >= 0");
  if (p <= 4.0) throw std::invalid_argument("h_eval: requires p > 4");
  return 2.0 * std::pow(t, p - 2.0) - (p - 2.0) * t * t + p - 4.0;
}

CheckReport check_f5(const NonlinearitySpec& spec) {
  CheckReport rep;
  rep.check_id = "nonlin.f_small_t_limit";
  rep.anchor = "|f(t)|/|t| -> 0 as t -> 0";
  rep.status = CheckStatus::ReportOnly;
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  double last = 0.0;
  for (int e = 1; e <= 8; ++e) {
    const double t = std::pow(10.0, -e);
    last = std::abs(spec.f(t)) / t;
    if (last > prev) monotone = false;
    prev = last;
  }
  rep.measured = {{"ratio_at_1e-8", last}, {"monotone_decay", monotone ? 1.0 : 0.0}};
  rep.tolerance = 1e-6;
  rep.status = (monotone && last < 1e-6) ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

CheckReport check_f6(const NonlinearitySpec& spec, double beta) {
  CheckReport rep;
  rep.check_id = "nonlin.monotone_quotient";
  rep.anchor = "(t f(t) - 2F(t)) / |t|^beta nondecreasing on (0, inf)";
  double worst = 0.0;
  bool ok = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 120; ++i) {
    const double t = std::pow(10.0, -4.0 + 4.4 * i / 120.0);  // up to ~2.5
    const double ratio =
        (t * spec.f(t) - 2.0 * spec.F(t)) / std::pow(t, beta);
    if (ratio < prev - 1e-12 * std::abs(prev)) {
      ok = false;
      worst = std::min(worst, ratio - prev);
    }
    prev = ratio;
  }
  rep.measured = {{"beta", beta}, {"worst_decrease", worst}};
  rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

CheckReport check_f2(const NonlinearitySpec& spec, double tau) {
  CheckReport rep;
  rep.check_id = "nonlin.f_decay_order";
  rep.anchor = "|f(t)|/|t|^tau -> 0 as t -> 0, tau > 3";
  rep.status = CheckStatus::ReportOnly;
  double prev = std::numeric_limits<double>::infinity();
  bool decays = true;
  double last = 0.0;
  for (int e = 1; e <= 6; ++e) {
    const double t = std::pow(10.0, -e);
    last = std::abs(spec.f(t)) / std::pow(t, tau);
    if (last > prev) decays = false;
    prev = last;
  }
  rep.measured = {{"tau", tau}, {"ratio_at_1e-6", last}, {"decays", decays ? 1.0 : 0.0}};
  return rep;
}

CheckReport check_f1_witnesses(const NonlinearitySpec& spec) {
  // Critical exponential growth probed at two witnesses alpha = 4pi +- 0.5:
  // f(t)/(e^{alpha t^2}-1) should head to 0 above the threshold and grow
  // below it.
  CheckReport rep;
  rep.check_id = "nonlin.critical_growth_witness";
  rep.anchor = "f(t)/(e^{alpha t^2}-1) -> 0 (alpha > 4pi), -> inf (alpha < 4pi)";
  const double cap = spec.amplitude_cap;
  auto ratio = [&](double alpha, double t) {
    return std::abs(spec.f(t)) / std::expm1(alpha * t * t);
  };
  const double ts[3] = {0.5 * cap, 0.75 * cap, cap};
  const double above0 = ratio(NonlinearitySpec::alpha0 + 0.5, ts[0]);
  const double above1 = ratio(NonlinearitySpec::alpha0 + 0.5, ts[2]);
  const double below0 = ratio(NonlinearitySpec::alpha0 - 0.5, ts[0]);
  const double below1 = ratio(NonlinearitySpec::alpha0 - 0.5, ts[2]);
  const bool ok = above1 < above0 && below1 > below0;
  rep.measured = {{"above_shrinks_to", above1}, {"below_grows_to", below1}};
  rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

CheckReport check_F_ratio_monotone(const NonlinearitySpec& spec, double p) {
  CheckReport rep;
  rep.check_id = "nonlin.F_ratio_monotone";
  rep.anchor = "F(t)/(|t|^{p-1} t) nondecreasing on (0, inf)";
  bool ok = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 100; ++i) {
    const double t = 1e-3 + (3.0 - 1e-3) * i / 100.0;
    if (t > spec.amplitude_cap) break;
    const double ratio = spec.F(t) / std::pow(t, p);
    if (ratio < prev * (1.0 - 1e-12)) ok = false;
    prev = ratio;
  }
  rep.measured = {{"final_ratio", prev}};
  rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

CheckReport check_g_nonneg(const NonlinearitySpec& spec, double p) {
  CheckReport rep;
  rep.check_id = "nonlin.g_nonneg";
  rep.anchor = "g(t,v) >= 0 with g(1,v) = 0";
  // The sample grid reaches |t v| = 6; lift the field-evaluation cap for this
  // scalar diagnostic (e^{4 pi 36} is still representable).
  NonlinearitySpec wide = spec;
  wide.amplitude_cap = std::max(spec.amplitude_cap, 7.0);
  double min_g = 0.0, max_g1 = 0.0;
  for (int i = 0; i <= 30; ++i) {
    const double t = 0.1 + (3.0 - 0.1) * i / 30.0;
    for (int j = 0; j <= 40; ++j) {
      const double v = -2.0 + 4.0 * j / 40.0;
      min_g = std::min(min_g, g_eval(wide, t, v, p));
    }
  }
  for (int j = 0; j <= 40; ++j) {
    const double v = -2.0 + 4.0 * j / 40.0;
    max_g1 = std::max(max_g1, std::abs(g_eval(wide, 1.0, v, p)));
  }
  rep.measured = {{"min_g", min_g}, {"max_|g(1,v)|", max_g1}};
  rep.tolerance = 1e-12;
  rep.status = (min_g >= -1e-12 && max_g1 <= 1e-12) ? CheckStatus::Pass
                                                    : CheckStatus::Fail;
  return rep;
}

CheckReport check_h_nonneg(double p) {
  CheckReport rep;
  rep.check_id = "nonlin.h_nonneg";
  rep.anchor = "h(t) = 2t^{p-2} - (p-2)t^2 + p-4 >= 0, h(1) = 0";
  double min_h = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 500; ++i) {
    const double t = 5.0 * i / 500.0;
    min_h = std::min(min_h, h_eval(t, p));
  }
  const double h1 = h_eval(1.0, p);
  rep.measured = {{"min_h", min_h}, {"h(1)", h1}};
  rep.tolerance = 1e-12;
  rep.status = (min_h >= -1e-12 && std::abs(h1) <= 1e-12) ? CheckStatus::Pass
                                                          : CheckStatus::Fail;
  return rep;
}

CheckReport check_f7_lipschitz_ratio(const NonlinearitySpec& spec, double eps) {
  CheckReport rep;
  rep.check_id = "nonlin.complex_lipschitz_ratio";
  rep.anchor =
      "|f(z1)-f(z2)| / (|z1-z2| sum_j (e^{4pi(1+eps)|z_j|^2}-1)) bounded on a box";
  rep.status = CheckStatus::ReportOnly;
  double sup = 0.0;
  const double amax = std::min(1.5, spec.amplitude_cap);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 8; ++l) {
          const std::complex<double> z1(amax * (i + 1) / 8.0 - amax / 2.0,
                                        amax * (j + 1) / 8.0 - amax / 2.0);
          const std::complex<double> z2(amax * (k + 1) / 8.0 - amax / 2.0,
                                        amax * (l + 1) / 8.0 - amax / 2.0);
          const double dz = std::abs(z1 - z2);
          if (dz < 1e-12) continue;
          const double denom =
              dz * (std::expm1(kFourPi * (1 + eps) * std::norm(z1)) +
                    std::expm1(kFourPi * (1 + eps) * std::norm(z2)));
          if (denom <= 0.0) continue;
          sup = std::max(sup, std::abs(spec.f(z1) - spec.f(z2)) / denom);
        }
  rep.measured = {{"eps", eps}, {"sup_ratio", sup}};
  return rep;
}

double moser_trudinger_integral(const Field& u, double alpha) {
  if (alpha <= 0.0)
    throw std::invalid_argument("moser_trudinger_integral: alpha must be > 0");
  double peak = 0.0;
  for (double v : u.values) peak = std::max(peak, v * v);
  if (alpha * peak > 700.0)
    throw std::range_error("moser_trudinger_integral: exponent overflow");
  double s = 0.0;
  for (double v : u.values) s += std::expm1(alpha * v * v);
  const double h = u.grid.cell();
  return h * h * s;
}

double gn_check(const Field& u, double r) {
  if (r <= 2.0) throw std::invalid_argument("gn_check: requires r > 2");
  const double m = mass(u);
  if (m <= 0.0) throw std::invalid_argument("gn_check: zero field");
  const double A = dirichlet_energy(u);
  const double num = std::pow(lp_norm(u, r), r);
  return num / (std::pow(A, (r - 2.0) / 2.0) * m);
}

}  // namespace sps
