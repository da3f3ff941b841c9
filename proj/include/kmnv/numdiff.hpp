#pragma once

#include <functional>

namespace kmnv {

// Finite-difference settings. Central differences are second-order accurate;
// with Richardson extrapolation the leading error term is eliminated, giving
// fourth-order truncation at the cost of doubling the number of evaluations.
// Round-off grows like eps/step for first derivatives and eps/step^2 for the
// nested second derivatives used by the curvature pipeline, so charts with
// smooth analytic fields benefit from a larger step than the global default;
// manifests may override per entry.
struct FdConfig {
  double step = 1e-5;
  bool richardson = true;
};

namespace numdiff {

// d/dt at t = 0 of a scalar function of one real parameter.
inline double first(const std::function<double(double)>& f, const FdConfig& fd) {
  auto central = [&f](double h) { return (f(h) - f(-h)) / (2.0 * h); };
  if (!fd.richardson) return central(fd.step);
  double d1 = central(fd.step);
  double d2 = central(fd.step / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace numdiff
}  // namespace kmnv
