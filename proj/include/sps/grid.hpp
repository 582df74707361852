#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace sps {

// Uniform periodic grid on the square [-L, L)^2 with n points per axis.
// Node (j, k) sits at x = (-L + j*h, -L + k*h), h = 2L/n.
struct Grid2D {
  double half_width = 0.0;  // L
  int n = 0;                // points per axis, power of two, >= 8

  double cell() const { return 2.0 * half_width / n; }
  double coord(int j) const { return -half_width + j * cell(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  bool operator==(const Grid2D&) const = default;

  // Signed spectral wavenumber of mode index m, fundamental pi/L.
  double wavenumber(int m) const;
};

Grid2D build_grid(double half_width, int n);

template <class T>
struct FieldT {
  Grid2D grid;
  std::vector<T> values;  // row-major, values[j*n + k]

  FieldT() = default;
  explicit FieldT(const Grid2D& g) : grid(g), values(g.size(), T{}) {}
  T& at(int j, int k) { return values[static_cast<std::size_t>(j) * grid.n + k]; }
  const T& at(int j, int k) const {
    return values[static_cast<std::size_t>(j) * grid.n + k];
  }
};

using Field = FieldT<double>;                 // stationary problems
using CField = FieldT<std::complex<double>>;  // dynamics

bool all_finite(const Field& u);
bool all_finite(const CField& u);

// amplitude * exp(-|x - center|^2 / (2 width^2)) sampled on the grid.
Field gaussian_field(const Grid2D& grid, double amplitude, double width,
                     std::array<double, 2> center = {0.0, 0.0});

// h^2 * sum |u|^2
double mass(const Field& u);
double mass(const CField& u);

// A(u) = integral of |grad u|^2, evaluated spectrally.
double dirichlet_energy(const Field& u);
double dirichlet_energy(const CField& u);

// (h^2 sum |u|^r)^(1/r), r >= 1.
double lp_norm(const Field& u, double r);

// h^2 * sum ln(1+|x|) u^2
double star_norm_sq(const Field& u);
double star_norm_sq(const CField& u);

// mass + dirichlet + star-weighted part
double x_norm_sq(const Field& u);
double x_norm_sq(const CField& u);

// u_t(x) = t*u(t*x) by bilinear interpolation. Sample points that land
// outside the box read as zero; for t < 1 the outer part of u is never
// sampled and its mass is reported in truncated_mass.
struct DilateResult {
  Field field;
  bool truncated = false;
  double truncated_mass = 0.0;
};
DilateResult dilate(const Field& u, double t);

// sqrt(c / mass(u)) * u; throws on a zero field.
Field normalize_mass(const Field& u, double c);
CField normalize_mass(const CField& u, double c);

// Density centroid (circular mean per axis) and re-centering by whole cells;
// used to report minimizers modulo the grid's translation invariance.
std::array<double, 2> density_centroid(const Field& u);
Field recenter(const Field& u);
template <class T>
FieldT<T> circular_shift(const FieldT<T>& u, int dj, int dk);

// Smooth deterministic pseudo-random fields: a few cosine modes under a
// Gaussian envelope, so the result decays inside the box.
Field smooth_random_field(const Grid2D& grid, std::uint64_t seed,
                          double amplitude = 1.0);
CField smooth_random_cfield(const Grid2D& grid, std::uint64_t seed,
                            double amplitude = 1.0);

}  // namespace sps
