#pragma once

#include <functional>

namespace sps {

// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, int max_depth = 48);

// Same, but pre-split into panels so narrow features far from the endpoints
// cannot be missed by the first Simpson probes.
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10, int panels = 32);

}  // namespace sps
