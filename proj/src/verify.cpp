#include "sps/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <thread>

#include "sps/fft.hpp"
#include "sps/functional.hpp"
#include "sps/grid.hpp"
#include "sps/logkernel.hpp"
#include "sps/nonlinearity.hpp"

namespace sps {

namespace {

struct Ctx {
  Grid2D grid;
  LogKernel kernel;
  std::vector<Field> corpus;
  NonlinearitySpec exp_b;
  NonlinearitySpec exp_a;
  NonlinearitySpec power;
};

Field analytic_dilate_gaussian(const Grid2D& g, double amp, double width,
                               double t) {
  // exact samples of t * u(t x) for u = amp * exp(-|x|^2 / 2 width^2)
  return gaussian_field(g, t * amp, width / t);
}

double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0 ? std::abs(a - b) / scale : 0.0;
}

CheckReport hard(const std::string& id, const std::string& anchor,
                 double measured, double tol) {
  CheckReport r;
  r.check_id = id;
  r.anchor = anchor;
  r.measured = {{"max_err", measured}};
  r.tolerance = tol;
  r.status = measured <= tol ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

// ---- grid checks -----------------------------------------------------------

CheckReport check_spectral_roundtrip(const Ctx& c) {
  double worst = 0.0;
  for (const Field& u : c.corpus) {
    std::vector<std::complex<double>> buf(u.values.begin(), u.values.end());
    fft2(buf, c.grid.n);
    ifft2(buf, c.grid.n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < buf.size(); ++i) {
      num += std::norm(buf[i] - u.values[i]);
      den += u.values[i] * u.values[i];
    }
    worst = std::max(worst, std::sqrt(num / std::max(den, 1e-300)));
  }
  return hard("grid.spectral_roundtrip", "ifft(fft(u)) = u", worst, 1e-12);
}

CheckReport check_plancherel(const Ctx& c) {
  double worst = 0.0;
  for (const Field& u : c.corpus) {
    std::vector<std::complex<double>> buf(u.values.begin(), u.values.end());
    fft2(buf, c.grid.n);
    double spec = 0.0;
    for (const auto& z : buf) spec += std::norm(z);
    const double h = c.grid.cell();
    spec *= h * h / (static_cast<double>(c.grid.n) * c.grid.n);
    worst = std::max(worst, rel_err(spec, mass(u)));
  }
  return hard("grid.plancherel", "h^2 sum |u|^2 = spectral-side sum", worst,
              1e-10);
}

CheckReport check_nonneg(const Ctx& c) {
  double worst = 0.0;
  for (const Field& u : c.corpus) {
    worst = std::min({worst, mass(u), dirichlet_energy(u), star_norm_sq(u)});
  }
  return hard("grid.norms_nonneg", "A(u) >= 0, mass >= 0, ||u||_*^2 >= 0",
              std::max(0.0, -worst), 0.0);
}

CheckReport check_dilate_composition(const Ctx& c) {
  const Field u = gaussian_field(c.grid, 1.0, 1.8);
  double worst = 0.0;
  for (double s : {0.7, 1.1}) {
    for (double t : {0.8, 1.4}) {
      const Field two = dilate(dilate(u, s).field, t).field;
      const Field one = dilate(u, s * t).field;
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < one.values.size(); ++i) {
        num += (two.values[i] - one.values[i]) * (two.values[i] - one.values[i]);
        den += one.values[i] * one.values[i];
      }
      worst = std::max(worst, std::sqrt(num / den));
    }
  }
  // bilinear interpolation applied twice; tolerance is interpolation-level
  return hard("grid.dilate_composition", "dilate(dilate(u,s),t) = dilate(u,st)",
              worst, 2e-2);
}

CheckReport check_scaling_laws(const Ctx& c) {
  // On exactly resampled Gaussians the continuum identities
  //   mass(u_t) = mass(u), A(u_t) = t^2 A(u),
  //   V(u_t) = V(u) - c^2 ln t, int |u_t|^4 = t^2 int |u|^4
  // must hold to discretization accuracy.
  const double amp = 0.8, width = 1.4;
  const Field u = gaussian_field(c.grid, amp, width);
  const double m0 = mass(u), A0 = dirichlet_energy(u), V0 = c.kernel.V(u);
  const double l40 = std::pow(lp_norm(u, 4.0), 4.0);
  double worst = 0.0;
  for (double t : {0.5, 0.8, 1.25, 2.0}) {
    const Field ut = analytic_dilate_gaussian(c.grid, amp, width, t);
    worst = std::max(worst, rel_err(mass(ut), m0));
    worst = std::max(worst, rel_err(dirichlet_energy(ut), t * t * A0));
    worst = std::max(worst, rel_err(c.kernel.V(ut), V0 - m0 * m0 * std::log(t)));
    worst = std::max(worst, rel_err(std::pow(lp_norm(ut, 4.0), 4.0), t * t * l40));
  }
  return hard("grid.dilation_scaling",
              "mass(u_t)=mass(u); A(u_t)=t^2 A; V(u_t)=V-c^2 ln t; "
              "||u_t||_4^4=t^2 ||u||_4^4",
              worst, 1e-3);
}

// ---- kernel checks ---------------------------------------------------------

CheckReport check_kernel_identity(const Ctx& c) {
  double worst = 0.0;
  const Field& u = c.corpus.front();
  Field rho(u.grid);
  for (std::size_t i = 0; i < rho.values.size(); ++i)
    rho.values[i] = u.values[i] * u.values[i];
  const Field w0 = c.kernel.convolve(BKind::B0, rho);
  const Field w1 = c.kernel.convolve(BKind::B1, rho);
  const Field w2 = c.kernel.convolve(BKind::B2, rho);
  double scale = 0.0;
  for (std::size_t i = 0; i < w0.values.size(); ++i)
    scale = std::max(scale, std::abs(w0.values[i]));
  for (std::size_t i = 0; i < w0.values.size(); ++i)
    worst = std::max(worst,
                     std::abs(w0.values[i] - (w1.values[i] - w2.values[i])));
  return hard("kernel.log_split_identity",
              "ln|x| = ln(1+|x|) - ln(1+1/|x|) through the convolutions",
              worst / std::max(scale, 1e-300), 1e-12);
}

CheckReport check_minus_kernel_decay(const Ctx&) {
  const double v = std::log1p(1.0 / 20.0);
  return hard("kernel.remainder_decay", "ln(1+1/|x|) -> 0 at |x| = 20", v,
              0.05);
}

CheckReport check_linearity(const Ctx& c) {
  const Field& u1 = c.corpus[0];
  const Field& u2 = c.corpus[1];
  Field r1(c.grid), r2(c.grid), mix(c.grid);
  const double a = 0.7, b = -1.3;
  for (std::size_t i = 0; i < r1.values.size(); ++i) {
    r1.values[i] = u1.values[i] * u1.values[i];
    r2.values[i] = u2.values[i] * u2.values[i];
    mix.values[i] = a * r1.values[i] + b * r2.values[i];
  }
  const Field w1 = c.kernel.newtonian_potential(r1);
  const Field w2 = c.kernel.newtonian_potential(r2);
  const Field wm = c.kernel.newtonian_potential(mix);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < wm.values.size(); ++i) {
    const double want = a * w1.values[i] + b * w2.values[i];
    num += (wm.values[i] - want) * (wm.values[i] - want);
    den += want * want;
  }
  return hard("kernel.linearity", "(ln * (a r1 + b r2)) = a w1 + b w2",
              std::sqrt(num / den), 1e-10);
}

CheckReport check_translation_covariance(const Ctx& c) {
  const Field u = gaussian_field(c.grid, 1.0, 1.0);
  Field rho(c.grid);
  for (std::size_t i = 0; i < rho.values.size(); ++i)
    rho.values[i] = u.values[i] * u.values[i];
  const int dj = c.grid.n / 8, dk = -c.grid.n / 16;
  const Field shifted = circular_shift(rho, dj, dk);
  const Field w = c.kernel.newtonian_potential(rho);
  const Field ws = c.kernel.newtonian_potential(shifted);
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j < c.grid.n; ++j)
    for (int k = 0; k < c.grid.n; ++k) {
      const int js = j - dj, ks = k - dk;
      if (js < 0 || js >= c.grid.n || ks < 0 || ks >= c.grid.n) continue;
      worst = std::max(worst, std::abs(ws.at(j, k) - w.at(js, ks)));
      scale = std::max(scale, std::abs(w.at(js, ks)));
    }
  return hard("kernel.translation_covariance",
              "shifting rho by a grid vector shifts w by the same vector",
              worst / scale, 1e-10);
}

CheckReport check_V_decomposition(const Ctx& c) {
  double worst = 0.0;
  for (const Field& u : c.corpus)
    worst = std::max(worst,
                     rel_err(c.kernel.V(u), c.kernel.V1(u) - c.kernel.V2(u)));
  return hard("kernel.V_decomposition", "V = V1 - V2", worst, 1e-8);
}

CheckReport check_V_parts_nonneg(const Ctx& c) {
  double worst = 0.0;
  for (const Field& u : c.corpus)
    worst = std::min({worst, c.kernel.V1(u), c.kernel.V2(u)});
  return hard("kernel.V_parts_nonneg", "V1 >= 0 and V2 >= 0",
              std::max(0.0, -worst), 0.0);
}

CheckReport check_B_symmetry(const Ctx& c) {
  const Field& a = c.corpus[0];
  const Field& b = c.corpus[1];
  double worst = 0.0;
  for (BKind kind : {BKind::B0, BKind::B1, BKind::B2})
    worst = std::max(
        worst, rel_err(c.kernel.B_form(kind, a, b), c.kernel.B_form(kind, b, a)));
  return hard("kernel.B_symmetry", "B(a,b) = B(b,a)", worst, 1e-10);
}

CheckReport check_B1_is_V1(const Ctx& c) {
  const Field& u = c.corpus[0];
  Field rho(c.grid);
  for (std::size_t i = 0; i < rho.values.size(); ++i)
    rho.values[i] = u.values[i] * u.values[i];
  const double lhs = c.kernel.B_form(BKind::B1, rho, rho);
  return hard("kernel.B1_equals_V1", "B1(u^2, u^2) = V1(u)",
              rel_err(lhs, c.kernel.V1(u)), 1e-12);
}

CheckReport check_direct_sum_oracle(const Ctx&) {
  // Spectral free-space convolution against the O(n^4) double sum with the
  // same singular-cell rule, on a small grid.
  const Grid2D g = build_grid(6.0, 16);
  const LogKernel kernel(g);
  Field rho = gaussian_field(g, 1.0, 1.3, {0.7, -0.4});
  const Field a = kernel.newtonian_potential(rho);
  const Field b = direct_newtonian_potential(rho);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
    den += b.values[i] * b.values[i];
  }
  return hard("kernel.direct_sum_oracle",
              "spectral convolution = O(n^4) direct summation",
              std::sqrt(num / den), 1e-10);
}

CheckReport check_V_invariances(const Ctx& c) {
  const Field u = gaussian_field(c.grid, 0.9, 1.2);
  Field flipped = u;
  for (auto& v : flipped.values) v = -v;
  const Field shifted = circular_shift(u, c.grid.n / 8, c.grid.n / 8);
  const double V = c.kernel.V(u);
  const double worst = std::max(rel_err(c.kernel.V(flipped), V),
                                rel_err(c.kernel.V(shifted), V));
  return hard("kernel.V_invariance",
              "V(-u) = V(u) and V(translate u) = V(u)", worst, 1e-10);
}

CheckReport check_v1_bound(const Ctx& c) {
  // specialization of the bilinear bound with all four slots equal:
  // V1(u) <= 2 ||u||_*^2 ||u||_2^2
  double worst = -std::numeric_limits<double>::infinity();
  for (const Field& u : c.corpus) {
    const double lhs = c.kernel.V1(u);
    const double rhs = 2.0 * star_norm_sq(u) * mass(u);
    worst = std::max(worst, lhs - rhs);
  }
  return hard("kernel.V1_bound", "V1(u) <= 2 ||u||_*^2 ||u||_2^2",
              std::max(0.0, worst), 1e-12);
}

CheckReport check_v2_ratio(const Ctx& c) {
  const V2Calibration cal = calibrate_v2_constant(c.kernel, c.corpus);
  CheckReport r;
  r.check_id = "kernel.V2_ratio_calibration";
  r.anchor = "V2(u) <= Kbar ||u||_{8/3}^4 <= K A^{1/2} ||u||_2^3 (empirical)";
  r.status = CheckStatus::ReportOnly;
  r.measured = {{"Kbar", cal.Kbar}, {"K", cal.K}};
  return r;
}

// ---- nonlinearity checks ---------------------------------------------------

CheckReport check_odd_even(const Ctx& c) {
  double worst = 0.0;
  for (const auto* spec : {&c.exp_a, &c.exp_b, &c.power}) {
    for (int i = 1; i <= 20; ++i) {
      const double t = 2.0 * i / 20.0;
      worst = std::max(worst, std::abs(spec->f(-t) + spec->f(t)));
      worst = std::max(worst, std::abs(spec->F(-t) - spec->F(t)));
    }
  }
  return hard("nonlin.odd_even", "f(-t) = -f(t), F(-t) = F(t)", worst, 1e-9);
}

CheckReport check_derivative_consistency(const Ctx& c) {
  double worst = 0.0;
  const double eps = 1e-5;
  for (const auto* spec : {&c.exp_a, &c.exp_b, &c.power}) {
    for (int i = -20; i <= 20; ++i) {
      if (i == 0) continue;
      const double t = 2.0 * i / 20.0;
      const double fd = (spec->F(t + eps) - spec->F(t - eps)) / (2.0 * eps);
      worst = std::max(worst, rel_err(fd, spec->f(t)));
    }
  }
  return hard("nonlin.derivative_consistency",
              "(F(t+e)-F(t-e))/2e = f(t)", worst, 1e-6);
}

CheckReport check_F_nonneg(const Ctx& c) {
  double worst = 0.0;
  for (const auto* spec : {&c.exp_a, &c.exp_b, &c.power})
    for (int i = 0; i <= 40; ++i)
      worst = std::min(worst, spec->F(-2.0 + 4.0 * i / 40.0));
  return hard("nonlin.F_nonneg", "F(t) >= 0", std::max(0.0, -worst), 0.0);
}

CheckReport check_mt_monotone(const Ctx& c) {
  const Field u = gaussian_field(c.grid, 0.8, 1.1);
  double prev = 0.0;
  bool ok = true;
  for (double alpha : {1.0, 2.0, 4.0, 8.0}) {
    const double v = moser_trudinger_integral(u, alpha);
    if (v < prev) ok = false;
    prev = v;
  }
  return hard("nonlin.mt_monotone_alpha",
              "int (e^{alpha u^2}-1) monotone in alpha", ok ? 0.0 : 1.0, 0.5);
}

CheckReport check_gn_dilation_invariance(const Ctx& c) {
  const double amp = 0.8, width = 1.3;
  const Field u = gaussian_field(c.grid, amp, width);
  const double base = gn_check(u, 4.0);
  double worst = 0.0;
  for (double t : {0.6, 1.5}) {
    const Field ut = analytic_dilate_gaussian(c.grid, amp, width, t);
    worst = std::max(worst, rel_err(gn_check(ut, 4.0), base));
  }
  return hard("nonlin.gn_dilation_invariance",
              "||u||_r^r/(A^{(r-2)/2} mass) invariant under u -> t u(t x)",
              worst, 1e-4);
}

CheckReport check_gn_ratio_bounded(const Ctx& c) {
  CheckReport r;
  r.check_id = "nonlin.gn_ratio_corpus";
  r.anchor = "sup over corpus of the GN quotient (lower estimate of S_r)";
  r.status = CheckStatus::ReportOnly;
  double sup4 = 0.0, sup3 = 0.0;
  for (const Field& u : c.corpus) {
    sup4 = std::max(sup4, gn_check(u, 4.0));
    sup3 = std::max(sup3, gn_check(u, 3.0));
  }
  r.measured = {{"sup_r4", sup4}, {"sup_r3", sup3}};
  return r;
}

// ---- functional checks -----------------------------------------------------

CheckReport check_gradient_fd(const Ctx& c) {
  double worst = 0.0;
  const double eps = 1e-6;
  for (int pair = 0; pair < 3; ++pair) {
    const Field u = smooth_random_field(c.grid, 1000 + pair, 0.25);
    const Field v = smooth_random_field(c.grid, 2000 + pair, 0.25);
    const Field G = gradJ(c.kernel, c.exp_b, u);
    const double h = c.grid.cell();
    double dir = 0.0;
    for (std::size_t i = 0; i < G.values.size(); ++i)
      dir += G.values[i] * v.values[i];
    dir *= h * h;
    Field up = u, um = u;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      up.values[i] += eps * v.values[i];
      um.values[i] -= eps * v.values[i];
    }
    const double fd = (J_eval(c.kernel, c.exp_b, up).total -
                       J_eval(c.kernel, c.exp_b, um).total) /
                      (2.0 * eps);
    worst = std::max(worst, rel_err(dir, fd));
  }
  return hard("functional.gradient_fd",
              "<gradJ(u), v> = d/de J(u+ev) by central differences", worst,
              1e-5);
}

CheckReport check_J_invariance(const Ctx& c) {
  const Field u = gaussian_field(c.grid, 0.7, 1.4);
  Field flipped = u;
  for (auto& v : flipped.values) v = -v;
  const Field shifted = circular_shift(u, c.grid.n / 16, -c.grid.n / 16);
  const double J = J_eval(c.kernel, c.power, u).total;
  const double worst =
      std::max(rel_err(J_eval(c.kernel, c.power, flipped).total, J),
               rel_err(J_eval(c.kernel, c.power, shifted).total, J));
  return hard("functional.J_invariance",
              "J invariant under sign flip and grid translation (even f)",
              worst, 1e-10);
}

CheckReport check_J_dilation_law(const Ctx& c) {
  const double amp = 0.6, width = 1.4;
  const Field u = gaussian_field(c.grid, amp, width);
  const double A = dirichlet_energy(u);
  const double V = c.kernel.V(u);
  const double m = mass(u);
  const double h = c.grid.cell();
  double worst = 0.0;
  for (double t : {0.7, 1.5}) {
    const Field ut = analytic_dilate_gaussian(c.grid, amp, width, t);
    const double direct = J_eval(c.kernel, c.exp_b, ut).total;
    double sF = 0.0;
    for (double v : ut.values) sF += c.exp_b.F(v);
    const double law =
        0.5 * t * t * A + 0.25 * (V - m * m * std::log(t)) - h * h * sF;
    worst = std::max(worst, rel_err(direct, law));
  }
  return hard("functional.J_dilation_law",
              "J(u_t) = t^2 A/2 + (V - c^2 ln t)/4 - int F(u_t)", worst, 1e-4);
}

CheckReport check_breakdown_total(const Ctx& c) {
  double worst = 0.0;
  for (const Field& u : c.corpus) {
    const EnergyBreakdown e = J_eval(c.kernel, c.exp_b, u);
    worst = std::max(
        worst, rel_err(e.total, e.kinetic + e.interaction + e.potential));
  }
  return hard("functional.breakdown_total",
              "total = kinetic + interaction + potential", worst, 1e-14);
}

CheckReport check_phi_t1(const Ctx& c) {
  const Field& u = c.corpus[0];
  const double lhs = phi_eval(c.exp_b, u, 1.0);
  double sF = 0.0;
  for (double v : u.values) sF += c.exp_b.F(v);
  const double h = c.grid.cell();
  const double rhs = 0.5 * dirichlet_energy(u) - h * h * sF;
  return hard("functional.phi_at_one", "Phi(1) = A/2 - int F",
              rel_err(lhs, rhs), 1e-13);
}

CheckReport check_Q_reduction(const Ctx& c) {
  NonlinearitySpec off = c.power;
  off.a = 0.0;  // f = F = 0
  const Field& u = c.corpus[1];
  const double m = mass(u);
  const double want = dirichlet_energy(u) - 0.25 * m * m;
  return hard("functional.Q_reduction",
              "Q(u) = A - mass^2/4 when f = F = 0",
              rel_err(Q_eval(c.kernel, off, u), want), 1e-13);
}

CheckReport check_bound_formulas(const Ctx&) {
  const double g = gamma_upper_bound(0.1);
  const double m = mc_upper_bound(0.1, 5.0);
  const double worst = std::max(std::abs(g - 0.050443113462726375),
                                std::abs(m - 0.91 / 12.0));
  return hard("functional.closed_form_bounds",
              "c/2 + sqrt(pi) c^3/4 and ((p-4)(1-c)+c^2)/(4(p-2))", worst,
              1e-15);
}

CheckReport check_gap_inequality(const Ctx& c) {
  const V2Calibration cal = calibrate_v2_constant(c.kernel, c.corpus);
  CheckReport agg;
  agg.check_id = "functional.fiber_gap";
  agg.anchor = "fiber gap inequality with empirical K";
  agg.status = CheckStatus::ReportOnly;
  double min_slack = std::numeric_limits<double>::infinity();
  for (const Field& u : c.corpus) {
    for (double t : {0.5, 1.0, 2.0}) {
      const CheckReport r =
          fiber_gap_check(c.kernel, c.exp_b, u, t, c.exp_b.p, cal.K);
      double lhs = 0, rhs = 0;
      for (const auto& [k, v] : r.measured) {
        if (k == "lhs") lhs = v;
        if (k == "rhs") rhs = v;
      }
      min_slack = std::min(min_slack, lhs - rhs);
    }
  }
  agg.measured = {{"min_slack", min_slack}, {"K", cal.K}};
  agg.status = min_slack >= -1e-8 ? CheckStatus::Pass : CheckStatus::Fail;
  return agg;
}

}  // namespace

std::vector<CheckReport> run_suite(std::uint64_t corpus_seed, double L, int n,
                                   int workers) {
  const Grid2D grid = build_grid(L, n);
  Ctx ctx{grid,
          LogKernel(grid),
          {},
          make_spec("exp_b", 5.0, 1.0, 1.0),
          make_spec("exp_a", 3.0, 1.0, 1.0),
          make_spec("power", 5.0, 1.0, 1.0)};

  // Deterministic corpus: Gaussians, a mixture, band-limited random fields,
  // and a dilated Gaussian.
  ctx.corpus.push_back(gaussian_field(grid, 1.0, 1.0));
  ctx.corpus.push_back(gaussian_field(grid, 0.7, 1.6, {1.5, -1.0}));
  ctx.corpus.push_back(gaussian_field(grid, 0.4, 2.5));
  {
    Field mix = gaussian_field(grid, 0.6, 1.2, {-2.0, 0.5});
    const Field other = gaussian_field(grid, 0.5, 0.9, {2.0, 1.0});
    for (std::size_t i = 0; i < mix.values.size(); ++i)
      mix.values[i] += other.values[i];
    ctx.corpus.push_back(std::move(mix));
  }
  ctx.corpus.push_back(smooth_random_field(grid, corpus_seed, 0.3));
  ctx.corpus.push_back(smooth_random_field(grid, corpus_seed + 1, 0.2));
  ctx.corpus.push_back(dilate(gaussian_field(grid, 0.8, 1.5), 1.3).field);

  using CheckFn = std::function<CheckReport(const Ctx&)>;
  const std::vector<CheckFn> checks = {
      check_spectral_roundtrip, check_plancherel,       check_nonneg,
      check_dilate_composition, check_scaling_laws,     check_kernel_identity,
      check_minus_kernel_decay, check_linearity,        check_translation_covariance,
      check_V_decomposition,    check_V_parts_nonneg,   check_B_symmetry,
      check_B1_is_V1,           check_direct_sum_oracle, check_V_invariances,
      check_v1_bound,           check_v2_ratio,
      [](const Ctx& c) {
        CheckReport r = check_f5(c.exp_b);
        r.check_id = "nonlin.f_small_t_limit.exp_b";
        return r;
      },
      [](const Ctx& c) {
        CheckReport r = check_f6(c.exp_b, c.exp_b.p);
        r.check_id = "nonlin.monotone_quotient.exp_b";
        return r;
      },
      [](const Ctx& c) {
        CheckReport r = check_f6(c.power, c.power.p);
        r.check_id = "nonlin.monotone_quotient.power";
        return r;
      },
      [](const Ctx& c) {
        CheckReport r = check_f2(c.exp_b);
        r.check_id = "nonlin.f_decay_order.exp_b";
        return r;
      },
      [](const Ctx& c) {
        CheckReport r = check_f1_witnesses(c.exp_a);
        r.check_id = "nonlin.critical_growth_witness.exp_a";
        return r;
      },
      [](const Ctx& c) {
        CheckReport r = check_F_ratio_monotone(c.exp_b, c.exp_b.p);
        r.check_id = "nonlin.F_ratio_monotone.exp_b";
        return r;
      },
      [](const Ctx& c) { return check_g_nonneg(c.exp_b, c.exp_b.p); },
      [](const Ctx&) { return check_h_nonneg(5.0); },
      [](const Ctx& ctx2) { return check_f7_lipschitz_ratio(ctx2.exp_b); },
      check_odd_even,           check_derivative_consistency,
      check_F_nonneg,           check_mt_monotone,
      check_gn_dilation_invariance, check_gn_ratio_bounded,
      check_gradient_fd,        check_J_invariance,
      check_J_dilation_law,     check_breakdown_total,
      check_phi_t1,             check_Q_reduction,
      check_bound_formulas,     check_gap_inequality,
  };

  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(workers, 1);

  std::vector<CheckReport> reports(checks.size());
  std::size_t next = 0;
  while (next < checks.size()) {
    const std::size_t batch =
        std::min<std::size_t>(workers, checks.size() - next);
    std::vector<std::future<CheckReport>> futs;
    for (std::size_t i = 0; i < batch; ++i)
      futs.push_back(std::async(std::launch::async,
                                [&, i] { return checks[next + i](ctx); }));
    for (std::size_t i = 0; i < batch; ++i) reports[next + i] = futs[i].get();
    next += batch;
  }
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return a.check_id < b.check_id;
            });
  return reports;
}

bool any_hard_failure(const std::vector<CheckReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const CheckReport& r) {
    return r.status == CheckStatus::Fail;
  });
}

}  // namespace sps
