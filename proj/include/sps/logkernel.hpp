#pragma once

#include <vector>

#include "sps/grid.hpp"

namespace sps {

enum class BKind { B0, B1, B2 };

// Sampled logarithmic interaction kernels on the zero-padded 2n x 2n grid:
//   full:  ln|x|
//   plus:  ln(1+|x|)
//   minus: ln(1+1/|x|)
// with ln|x| = ln(1+|x|) - ln(1+1/|x|) away from the origin. The origin node
// of ln|x| carries the corrected punctured-trapezoidal weight
// ln h + ln(2 sqrt(pi)) - 2 ln Gamma(1/4) (see log_singular_weight), which
// makes the midpoint convolution 4th-order accurate for smooth densities;
// the plus kernel carries its exact cell average and the minus kernel the
// difference, so the split identity holds exactly at every node. Convolving
// against the padded kernels realizes free-space (non-circular) convolution
// for densities supported on the base grid.
class LogKernel {
 public:
  explicit LogKernel(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }
  double singular_cell_value() const { return singular_cell_value_; }

  // (ln|.| * rho), i.e. the B0 kernel applied to rho.
  Field newtonian_potential(const Field& rho) const;
  Field convolve(BKind kind, const Field& rho) const;

  // V(u)  = int int ln|x-y| u^2(x) u^2(y)
  // V1(u) = same with ln(1+|x-y|), V2(u) with ln(1+1/|x-y|); V = V1 - V2.
  double V(const Field& u) const;
  double V1(const Field& u) const;
  double V2(const Field& u) const;

  // int int k(x-y) a(x) b(y) via one convolution and one inner product.
  double B_form(BKind kind, const Field& a, const Field& b) const;

 private:
  Grid2D grid_;
  int m_;  // padded extent, 2n
  double singular_cell_value_;
  std::vector<std::complex<double>> spectral_full_, spectral_plus_,
      spectral_minus_;

  const std::vector<std::complex<double>>& spectral(BKind kind) const;
};

// Exact cell average of ln|x| over the h x h cell centered at the origin.
double log_cell_average(double h);

// Corrected singular quadrature weight used at the origin node of the ln|x|
// kernel (lattice zeta constant); ln h + ln(2 sqrt(pi)) - 2 ln Gamma(1/4).
double log_singular_weight(double h);

// Empirical constants of the V2 bounds over a corpus of fields:
//   Kbar: max of V2(u) / ||u||_{8/3}^4
//   K:    max of V2(u) / (A(u)^{1/2} ||u||_2^3)
struct V2Calibration {
  double Kbar = 0.0;
  double K = 0.0;
};
V2Calibration calibrate_v2_constant(const LogKernel& kernel,
                                    const std::vector<Field>& corpus);

// Independent radial oracle for the Newtonian potential of a radial density:
//   w(r) = ln r * int_{s<=r} rho(s) 2 pi s ds + int_{s>r} ln s * rho(s) 2 pi s ds
// The density is given as samples on an increasing radial grid (interpolated
// cubically) and must have decayed below 1e-12 of its peak at the last sample.
std::vector<double> radial_log_oracle(const std::vector<double>& r,
                                      const std::vector<double>& density,
                                      const std::vector<double>& r_eval);

// O(n^4) direct double sum with the same singular-cell rule as LogKernel;
// brute-force reference for the spectral convolution.
Field direct_newtonian_potential(const Field& rho);

}  // namespace sps
