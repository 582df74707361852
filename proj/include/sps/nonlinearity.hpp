#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sps/grid.hpp"
#include "sps/report.hpp"

namespace sps {

// Parametric nonlinearity families with exponential-critical growth at the
// Trudinger-Moser threshold alpha0 = 4*pi, plus plain power laws:
//   ExpA:  f(t) = |t|^(p-2) t e^(4 pi t^2),            p > 2
//   ExpB:  F(t) = theta |t|^p e^(4 pi t^2),            p > 4
//          f(t) = theta (p |t|^(p-2) t + 8 pi |t|^p t) e^(4 pi t^2)
//   Power: f(t) = a |t|^(p-2) t, F(t) = (a/p) |t|^p
// f is odd with f(0) = 0; F is the even primitive with F(0) = 0.
enum class NonlinKind { ExpA, ExpB, Power };

struct NonlinearitySpec {
  NonlinKind kind = NonlinKind::ExpB;
  double p = 5.0;
  double theta = 1.0;  // ExpB coefficient
  double a = 1.0;      // Power coefficient
  // Exponential kinds overflow fast; inputs past this cap raise std::range_error.
  double amplitude_cap = 4.0;

  static constexpr double alpha0 = 12.566370614359172;  // 4*pi

  double f(double t) const;
  double F(double t) const;
  // Gauge-invariant complex extension f(z) = f(|z|) z/|z|, and the phase
  // multiplier q(s) = f(s)/s with q(0) = 0.
  std::complex<double> f(std::complex<double> z) const;
  double q(double s) const;

  std::string kind_name() const;
};

NonlinearitySpec make_spec(const std::string& kind, double p, double theta,
                           double a);

// g(t,v) = t^-2 F(tv) - F(v) + (1-t^(p-2))/(p-2) [f(v)v - 2F(v)]
double g_eval(const NonlinearitySpec& spec, double t, double v, double p);

// h(t) = 2t^(p-2) - (p-2)t^2 + p - 4, p > 4
double h_eval(double t, double p);

// Sampled condition checks. Hard structural identities are asserted by the
// test suite; these return measured reports.
CheckReport check_f5(const NonlinearitySpec& spec);
CheckReport check_f6(const NonlinearitySpec& spec, double beta);
CheckReport check_f2(const NonlinearitySpec& spec, double tau = 3.5);
CheckReport check_f1_witnesses(const NonlinearitySpec& spec);
CheckReport check_F_ratio_monotone(const NonlinearitySpec& spec, double p);
CheckReport check_g_nonneg(const NonlinearitySpec& spec, double p);
CheckReport check_h_nonneg(double p);
// Discrete Lipschitz ratio of the complex extension over a sampled box,
// reported against the exponential modulus sum (never asserted sharp).
CheckReport check_f7_lipschitz_ratio(const NonlinearitySpec& spec,
                                     double eps = 0.05);

// h^2 sum (e^(alpha u^2) - 1); guards against overflow.
double moser_trudinger_integral(const Field& u, double alpha);

// ||u||_r^r / (A(u)^((r-2)/2) * mass(u)), the dilation-invariant quotient of
// the Gagliardo-Nirenberg inequality; bounded over any corpus, and its max is
// an empirical lower estimate of the sharp constant.
double gn_check(const Field& u, double r);

}  // namespace sps
