#include "sps/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sps/fft.hpp"

namespace sps {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// SplitMix64: tiny deterministic generator for test-field synthesis.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

}  // namespace

double Grid2D::wavenumber(int m) const {
  const int signed_m = (m < n / 2) ? m : m - n;
  return std::numbers::pi / half_width * signed_m;
}

Grid2D build_grid(double half_width, int n) {
  if (half_width <= 0.0)
    throw std::invalid_argument("build_grid: half width must be positive");
  if (!is_power_of_two(n) || n < 8)
    throw std::invalid_argument(
        "build_grid: resolution must be a power of two and at least 8");
  return Grid2D{half_width, n};
}

bool all_finite(const Field& u) {
  for (double v : u.values)
    if (!std::isfinite(v)) return false;
  return true;
}

bool all_finite(const CField& u) {
  for (const auto& v : u.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Field gaussian_field(const Grid2D& grid, double amplitude, double width,
                     std::array<double, 2> center) {
  if (width <= 0.0)
    throw std::invalid_argument("gaussian_field: width must be positive");
  Field u(grid);
  const double inv2w2 = 1.0 / (2.0 * width * width);
  for (int j = 0; j < grid.n; ++j) {
    const double dx = grid.coord(j) - center[0];
    for (int k = 0; k < grid.n; ++k) {
      const double dy = grid.coord(k) - center[1];
      u.at(j, k) = amplitude * std::exp(-(dx * dx + dy * dy) * inv2w2);
    }
  }
  return u;
}

double mass(const Field& u) {
  double s = 0.0;
  for (double v : u.values) s += v * v;
  const double h = u.grid.cell();
  return h * h * s;
}

double mass(const CField& u) {
  double s = 0.0;
  for (const auto& v : u.values) s += std::norm(v);
  const double h = u.grid.cell();
  return h * h * s;
}

namespace {

template <class T>
double dirichlet_energy_impl(const FieldT<T>& u) {
  const int n = u.grid.n;
  std::vector<std::complex<double>> buf(u.values.begin(), u.values.end());
  fft2(buf, n);
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double kx = u.grid.wavenumber(j);
    for (int k = 0; k < n; ++k) {
      const double ky = u.grid.wavenumber(k);
      s += (kx * kx + ky * ky) * std::norm(buf[static_cast<std::size_t>(j) * n + k]);
    }
  }
  const double h = u.grid.cell();
  return h * h * s / (static_cast<double>(n) * n);
}

}  // namespace

double dirichlet_energy(const Field& u) { return dirichlet_energy_impl(u); }
double dirichlet_energy(const CField& u) { return dirichlet_energy_impl(u); }

double lp_norm(const Field& u, double r) {
  if (r < 1.0) throw std::invalid_argument("lp_norm: exponent must be >= 1");
  double s = 0.0;
  for (double v : u.values) s += std::pow(std::abs(v), r);
  const double h = u.grid.cell();
  return std::pow(h * h * s, 1.0 / r);
}

namespace {

template <class T>
double star_norm_sq_impl(const FieldT<T>& u) {
  const int n = u.grid.n;
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = u.grid.coord(j);
    for (int k = 0; k < n; ++k) {
      const double y = u.grid.coord(k);
      s += std::log(1.0 + std::hypot(x, y)) * std::norm(u.at(j, k));
    }
  }
  const double h = u.grid.cell();
  return h * h * s;
}

}  // namespace

double star_norm_sq(const Field& u) { return star_norm_sq_impl(u); }
double star_norm_sq(const CField& u) { return star_norm_sq_impl(u); }

double x_norm_sq(const Field& u) {
  return mass(u) + dirichlet_energy(u) + star_norm_sq(u);
}
double x_norm_sq(const CField& u) {
  return mass(u) + dirichlet_energy(u) + star_norm_sq(u);
}

DilateResult dilate(const Field& u, double t) {
  if (t <= 0.0) throw std::invalid_argument("dilate: scale must be positive");
  const Grid2D& g = u.grid;
  const int n = g.n;
  const double h = g.cell();
  DilateResult out;
  out.field = Field(g);
  for (int j = 0; j < n; ++j) {
    const double px = t * g.coord(j);
    const double gx = (px + g.half_width) / h;
    for (int k = 0; k < n; ++k) {
      const double py = t * g.coord(k);
      const double gy = (py + g.half_width) / h;
      const int j0 = static_cast<int>(std::floor(gx));
      const int k0 = static_cast<int>(std::floor(gy));
      const double fx = gx - j0, fy = gy - k0;
      auto sample = [&](int a, int b) -> double {
        if (a < 0 || a >= n || b < 0 || b >= n) return 0.0;
        return u.at(a, b);
      };
      const double v00 = sample(j0, k0), v10 = sample(j0 + 1, k0);
      const double v01 = sample(j0, k0 + 1), v11 = sample(j0 + 1, k0 + 1);
      out.field.at(j, k) =
          t * ((1 - fx) * ((1 - fy) * v00 + fy * v01) +
               fx * ((1 - fy) * v10 + fy * v11));
    }
  }
  if (t < 1.0) {
    // Mass of u outside the sampled window [-tL, tL)^2 is unreachable.
    const double lim = t * g.half_width;
    double lost = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (std::abs(g.coord(j)) >= lim || std::abs(g.coord(k)) >= lim)
          lost += u.at(j, k) * u.at(j, k);
    out.truncated_mass = h * h * lost;
    out.truncated = out.truncated_mass > 0.0;
  }
  return out;
}

namespace {

template <class T>
FieldT<T> normalize_mass_impl(const FieldT<T>& u, double c) {
  if (c <= 0.0)
    throw std::invalid_argument("normalize_mass: target mass must be positive");
  const double m = mass(u);
  if (m <= 0.0)
    throw std::invalid_argument("normalize_mass: zero input field");
  FieldT<T> out = u;
  const double s = std::sqrt(c / m);
  for (auto& v : out.values) v *= s;
  return out;
}

}  // namespace

Field normalize_mass(const Field& u, double c) {
  return normalize_mass_impl(u, c);
}
CField normalize_mass(const CField& u, double c) {
  return normalize_mass_impl(u, c);
}

std::array<double, 2> density_centroid(const Field& u) {
  // Circular mean per axis; well defined on the torus.
  const int n = u.grid.n;
  double cx = 0.0, sx = 0.0, cy = 0.0, sy = 0.0;
  const double w = 2.0 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double d = u.at(j, k) * u.at(j, k);
      cx += d * std::cos(w * j);
      sx += d * std::sin(w * j);
      cy += d * std::cos(w * k);
      sy += d * std::sin(w * k);
    }
  const double aj = std::atan2(sx, cx), ak = std::atan2(sy, cy);
  auto to_coord = [&](double a) {
    double idx = a / w;
    if (idx < 0) idx += n;
    return -u.grid.half_width + idx * u.grid.cell();
  };
  return {to_coord(aj), to_coord(ak)};
}

template <class T>
FieldT<T> circular_shift(const FieldT<T>& u, int dj, int dk) {
  const int n = u.grid.n;
  FieldT<T> out(u.grid);
  auto wrap = [n](int a) { return ((a % n) + n) % n; };
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out.at(j, k) = u.at(wrap(j - dj), wrap(k - dk));
  return out;
}
template Field circular_shift<double>(const Field&, int, int);
template CField circular_shift<std::complex<double>>(const CField&, int, int);

Field recenter(const Field& u) {
  const auto ctr = density_centroid(u);
  const double h = u.grid.cell();
  const int dj = -static_cast<int>(std::lround((ctr[0] + u.grid.half_width) / h)) +
                 u.grid.n / 2;
  const int dk = -static_cast<int>(std::lround((ctr[1] + u.grid.half_width) / h)) +
                 u.grid.n / 2;
  return circular_shift(u, dj, dk);
}

namespace {

struct ModeSet {
  struct Mode {
    double kx, ky, phase, amp;
  };
  std::vector<Mode> modes;
  double envelope_width;
};

ModeSet draw_modes(const Grid2D& grid, SplitMix64& rng) {
  ModeSet ms;
  ms.envelope_width = grid.half_width / 4.0;
  const int n_modes = 10;
  for (int i = 0; i < n_modes; ++i) {
    ModeSet::Mode m;
    m.kx = 4.0 * (rng.uniform() - 0.5);
    m.ky = 4.0 * (rng.uniform() - 0.5);
    m.phase = 2.0 * std::numbers::pi * rng.uniform();
    m.amp = 0.5 + rng.uniform();
    ms.modes.push_back(m);
  }
  return ms;
}

double eval_modes(const ModeSet& ms, double x, double y) {
  double v = 0.0;
  for (const auto& m : ms.modes)
    v += m.amp * std::cos(m.kx * x + m.ky * y + m.phase);
  const double w2 = 2.0 * ms.envelope_width * ms.envelope_width;
  return v * std::exp(-(x * x + y * y) / w2);
}

}  // namespace

Field smooth_random_field(const Grid2D& grid, std::uint64_t seed,
                          double amplitude) {
  SplitMix64 rng(seed);
  const ModeSet ms = draw_modes(grid, rng);
  Field u(grid);
  for (int j = 0; j < grid.n; ++j)
    for (int k = 0; k < grid.n; ++k)
      u.at(j, k) = amplitude * eval_modes(ms, grid.coord(j), grid.coord(k));
  return u;
}

CField smooth_random_cfield(const Grid2D& grid, std::uint64_t seed,
                            double amplitude) {
  SplitMix64 rng(seed);
  const ModeSet re = draw_modes(grid, rng);
  const ModeSet im = draw_modes(grid, rng);
  CField u(grid);
  for (int j = 0; j < grid.n; ++j)
    for (int k = 0; k < grid.n; ++k) {
      const double x = grid.coord(j), y = grid.coord(k);
      u.at(j, k) = amplitude *
                   std::complex<double>(eval_modes(re, x, y), eval_modes(im, x, y));
    }
  return u;
}

}  // namespace sps
