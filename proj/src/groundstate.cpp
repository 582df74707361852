#include "sps/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

#include "sps/fft.hpp"
#include "sps/io.hpp"

namespace sps {

namespace {

double integral_F(const NonlinearitySpec& spec, const Field& u) {
  double s = 0.0;
  for (double v : u.values) s += spec.F(v);
  const double h = u.grid.cell();
  return h * h * s;
}

double l2_norm(const Field& u) { return std::sqrt(mass(u)); }

// J and the multiplier-corrected gradient, with the interaction optionally
// disabled for diagnostics.
struct Objective {
  const LogKernel& kernel;
  const NonlinearitySpec& spec;
  bool interaction_off;

  double J(const Field& u) const {
    double val = 0.5 * dirichlet_energy(u) - integral_F(spec, u);
    if (!interaction_off) val += 0.25 * kernel.V(u);
    return val;
  }

  // Raw gradient G = -Lap u + w u - f(u); fills A, V, int f(u)u for reuse.
  Field grad(const Field& u, double& A, double& V, double& fu) const {
    const int n = u.grid.n;
    std::vector<std::complex<double>> buf(u.values.begin(), u.values.end());
    fft2(buf, n);
    A = 0.0;
    const double h = u.grid.cell();
    for (int j = 0; j < n; ++j) {
      const double kx = u.grid.wavenumber(j);
      for (int k = 0; k < n; ++k) {
        const double ky = u.grid.wavenumber(k);
        const double k2 = kx * kx + ky * ky;
        auto& z = buf[static_cast<std::size_t>(j) * n + k];
        A += k2 * std::norm(z);
        z *= k2;
      }
    }
    A *= h * h / (static_cast<double>(n) * n);
    ifft2(buf, n);

    Field g(u.grid);
    V = 0.0;
    if (!interaction_off) {
      Field rho(u.grid);
      for (std::size_t i = 0; i < u.values.size(); ++i)
        rho.values[i] = u.values[i] * u.values[i];
      const Field w = kernel.newtonian_potential(rho);
      for (std::size_t i = 0; i < u.values.size(); ++i)
        V += w.values[i] * rho.values[i];
      V *= h * h;
      for (std::size_t i = 0; i < g.values.size(); ++i)
        g.values[i] = buf[i].real() + w.values[i] * u.values[i];
    } else {
      for (std::size_t i = 0; i < g.values.size(); ++i)
        g.values[i] = buf[i].real();
    }
    fu = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      const double fv = spec.f(u.values[i]);
      fu += fv * u.values[i];
      g.values[i] -= fv;
    }
    fu *= h * h;
    return g;
  }
};

Field precondition_direction(const Field& d, double tau) {
  const int n = d.grid.n;
  std::vector<std::complex<double>> buf(d.values.begin(), d.values.end());
  fft2(buf, n);
  for (int j = 0; j < n; ++j) {
    const double kx = d.grid.wavenumber(j);
    for (int k = 0; k < n; ++k) {
      const double ky = d.grid.wavenumber(k);
      buf[static_cast<std::size_t>(j) * n + k] /=
          1.0 + tau * (kx * kx + ky * ky);
    }
  }
  ifft2(buf, n);
  Field out(d.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = buf[i].real();
  return out;
}

Field seed_field(const LogKernel& kernel, const MinimizeConfig& cfg) {
  const Grid2D& g = kernel.grid();
  switch (cfg.seed) {
    case MinimizeConfig::Seed::Gaussian:
      // sqrt(c/pi) e^{-|x|^2/2}: inside S(c) and the ball for c < rho
      return normalize_mass(gaussian_field(g, 1.0, 1.0), cfg.c);
    case MinimizeConfig::Seed::RandomSmooth: {
      Field u = smooth_random_field(g, cfg.rng_seed, 0.1);
      const Field base = gaussian_field(g, 1.0, 2.0);
      for (std::size_t i = 0; i < u.values.size(); ++i)
        u.values[i] += base.values[i];
      return normalize_mass(u, cfg.c);
    }
    case MinimizeConfig::Seed::File: {
      Field u = load_real_field(cfg.seed_file);
      if (!(u.grid == g))
        throw std::invalid_argument("seed file grid does not match run grid");
      return normalize_mass(u, cfg.c);
    }
  }
  throw std::logic_error("unreachable seed kind");
}

}  // namespace

GroundStateResult minimize_from(const LogKernel& kernel,
                                const MinimizeConfig& cfg, Field u) {
  if (!(cfg.c > 0.0) || !(cfg.rho_ball > 0.0) || cfg.rho_ball >= 1.0)
    throw std::invalid_argument("minimize: requires c > 0 and 0 < rho < 1");
  if (cfg.c >= cfg.rho_ball)
    throw std::invalid_argument(
        "minimize: requires c < rho so the constraint set is nonempty");

  const Objective obj{kernel, cfg.spec, cfg.interaction_off};
  if (!all_finite(u))
    throw std::invalid_argument("minimize: seed field has non-finite values");
  u = normalize_mass(u, cfg.c);
  double Ju = obj.J(u);
  double tau = cfg.tau0;
  const double tau_min = 1e-14;
  const double sqrt_c = std::sqrt(cfg.c);

  GroundStateResult res;
  double A = 0.0, V = 0.0, fu = 0.0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    Field G = obj.grad(u, A, V, fu);
    // Criticality monitor: the exponential regime needs alpha0 A(u) < 4 pi,
    // i.e. A < 1; abort with a range diagnostic well before that.
    if (A >= 0.95)
      throw std::range_error(
          "minimize: kinetic energy approached the critical threshold A = 1");
    const double lambda = (fu - A - (cfg.interaction_off ? 0.0 : V)) / cfg.c;
    Field d(u.grid);
    for (std::size_t i = 0; i < d.values.size(); ++i)
      d.values[i] = G.values[i] + lambda * u.values[i];
    const double el = l2_norm(d) / sqrt_c;

    res.iterations = it;
    res.el_residual = el;
    if (el <= cfg.tol) {
      res.converged = true;
      break;
    }

    const Field dir = cfg.precondition ? precondition_direction(d, tau) : d;
    bool accepted = false;
    double step = tau;
    while (step >= tau_min) {
      Field v(u.grid);
      for (std::size_t i = 0; i < v.values.size(); ++i)
        v.values[i] = u.values[i] - step * dir.values[i];
      v = normalize_mass(v, cfg.c);
      if (dirichlet_energy(v) <= cfg.rho_ball) {
        const double Jv = obj.J(v);
        if (Jv <= Ju) {
          u = std::move(v);
          Ju = Jv;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted)
      throw std::runtime_error(
          "minimize: descent stalled at minimal step (divergence)");
    tau = std::min(step * 1.3, 2.0);
  }

  // Report modulo translation: re-center the density before the final
  // diagnostics so regression outputs are stable.
  u = recenter(u);
  Field G = obj.grad(u, A, V, fu);
  const double lambda = (fu - A - (cfg.interaction_off ? 0.0 : V)) / cfg.c;
  Field d(u.grid);
  for (std::size_t i = 0; i < d.values.size(); ++i)
    d.values[i] = G.values[i] + lambda * u.values[i];

  res.el_residual = l2_norm(d) / sqrt_c;
  if (res.converged) res.converged = res.el_residual <= 10.0 * cfg.tol;
  res.gamma = Ju;
  res.lambda_c = lambda;
  res.A = A;
  double Q = 0.0;
  if (!cfg.interaction_off) Q = Q_eval(kernel, cfg.spec, u);
  res.Q_residual = std::abs(Q) / std::max(A, cfg.c * cfg.c);
  res.constraint_active = A >= cfg.rho_ball - 1e-3;
  res.u_c = std::move(u);
  return res;
}

GroundStateResult minimize(const LogKernel& kernel,
                           const MinimizeConfig& cfg) {
  return minimize_from(kernel, cfg, seed_field(kernel, cfg));
}

std::vector<SweepRow> mass_sweep(const LogKernel& kernel,
                                 const std::vector<double>& c_list,
                                 MinimizeConfig config) {
  std::vector<double> cs = c_list;
  std::sort(cs.begin(), cs.end(), std::greater<>());  // warm start downward
  std::vector<SweepRow> rows;
  std::optional<Field> warm;
  for (double c : cs) {
    MinimizeConfig cfg = config;
    cfg.c = c;
    const GroundStateResult r = warm ? minimize_from(kernel, cfg, *warm)
                                     : minimize(kernel, cfg);
    warm = r.u_c;
    rows.push_back(SweepRow{c, r.gamma, r.A, r.lambda_c, r.Q_residual,
                            r.el_residual, r.converged});
  }
  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.c < b.c; });
  return rows;
}

PathRecord dilation_path(const LogKernel& kernel, const NonlinearitySpec& spec,
                         const Field& u_c, double rho_ball) {
  PathRecord rec;
  const double A = dirichlet_energy(u_c);
  const double V = kernel.V(u_c);
  const double c = mass(u_c);
  const double h = u_c.grid.cell();

  double umax = 0.0;
  for (double v : u_c.values) umax = std::max(umax, std::abs(v));
  const double t_cap = (spec.kind == NonlinKind::Power)
                           ? 1e6
                           : spec.amplitude_cap / std::max(umax, 1e-300);

  auto J_at = [&](double t) {
    double s = 0.0;
    for (double v : u_c.values) s += spec.F(t * v);
    const double intF = h * h * s / (t * t);
    return 0.5 * t * t * A + 0.25 * (V - c * c * std::log(t)) - intF;
  };

  double t1 = 2.0;
  bool found = false;
  while (t1 <= t_cap) {
    if (J_at(t1) < 0.0 && t1 * t1 * A > rho_ball) {
      found = true;
      break;
    }
    t1 *= 2.0;
  }
  rec.t1_found = found;
  if (!found) {
    rec.t1 = std::min(t1, t_cap);
    rec.J_at_t1 = J_at(rec.t1);
    return rec;  // dilation limited by the amplitude cap before J < 0
  }
  rec.t1 = t1;
  rec.J_at_t1 = J_at(t1);

  const int samples = 400;
  rec.t_samples.reserve(samples + 1);
  rec.J_values.reserve(samples + 1);
  rec.J_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double t = std::exp(std::log(t1) * i / samples);  // log grid on [1, t1]
    const double Jt = J_at(t);
    rec.t_samples.push_back(t);
    rec.J_values.push_back(Jt);
    if (Jt > rec.J_max) {
      rec.J_max = Jt;
      rec.t_max = t;
    }
  }
  return rec;
}

std::vector<MpRow> mp_report(const LogKernel& kernel,
                             const std::vector<double>& theta_list,
                             MinimizeConfig config, int workers) {
  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(workers, 1);

  auto run_one = [&](double theta) {
    MinimizeConfig cfg = config;
    cfg.spec.theta = theta;
    const GroundStateResult r = minimize(kernel, cfg);
    const PathRecord path =
        dilation_path(kernel, cfg.spec, r.u_c, cfg.rho_ball);
    MpRow row;
    row.theta = theta;
    row.gamma = r.gamma;
    row.m_hat = path.J_max;
    row.bound = mc_upper_bound(cfg.c, cfg.spec.p);
    row.converged = r.converged;
    row.passes = r.converged && path.t1_found && path.J_at_t1 < 0.0 &&
                 r.gamma < path.J_max && path.J_max < row.bound;
    return row;
  };

  std::vector<MpRow> rows(theta_list.size());
  std::size_t next = 0;
  while (next < theta_list.size()) {
    const std::size_t batch =
        std::min<std::size_t>(workers, theta_list.size() - next);
    std::vector<std::future<MpRow>> futs;
    for (std::size_t i = 0; i < batch; ++i)
      futs.push_back(
          std::async(std::launch::async, run_one, theta_list[next + i]));
    for (std::size_t i = 0; i < batch; ++i) rows[next + i] = futs[i].get();
    next += batch;
  }
  return rows;
}

}  // namespace sps
