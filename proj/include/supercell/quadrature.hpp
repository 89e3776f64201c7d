#pragma once

#include <functional>

namespace supercell {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // achieved absolute error estimate
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. Subdivides
/// until the summed error estimate satisfies abs_tol or rel_tol, or the
/// interval budget runs out (converged = false in that case).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10, double rel_tol = 1e-8,
                           int max_intervals = 4000);

}  // namespace supercell
