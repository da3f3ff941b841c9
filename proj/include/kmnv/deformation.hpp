#pragma once

#include <array>
#include <string>

#include "kmnv/manifold.hpp"

namespace kmnv {
namespace deformation {

// The structure rescaling D_a (a > 0):
//   phi' = phi,  xi' = xi / a,  eta' = a eta,  g' = a g + a(a-1) eta (x) eta.
//
// Coordinate charts are rewritten symbolically (eta = g xi folded into the
// new metric entries). Orthonormal frames are rescaled through the frame
// legs E_i' = E_i / sqrt(a) (transverse) and xi' = xi / a, which keeps the
// frame g'-orthonormal; structure constants pick up a^((e_i + e_j - e_k)/2)
// with leg exponents -1 (transverse) and -2 (xi), so the contact
// normalization [E_1, E_2] = 2 xi + ... carries exponent 0 and survives
// floating-point exactly. Frame deformation requires xi to be a frame leg.
ManifoldSpec deform(const ManifoldSpec& spec, double a);

// Transformation laws for the invariants:
//   kappa' = (kappa + a^2 - 1) / a^2
//   mu'    = (mu + 2a - 2) / a
//   nu'    = nu / a
//   F'     = F/a - ((a-1)/a^2)(3a + 1 - kappa)
//   h'     = h / a
struct PredictedInvariants {
  double kappa = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double F = 0.0;
  double h_scale = 0.0;
};
PredictedInvariants predict(double kappa, double mu, double nu, double F, double a);

// Predicted dim-3 space-form coefficients (f1, f3, f4, f7) of the deformed
// manifold, from the base invariants:
//   f1' = F', f3' = F/a + ((a-2) kappa - 4a^2 + 2a + 2)/a^2,
//   f4' = (mu + 2a - 2)/a, f7' = nu/a.
struct PredictedDim3Coefficients {
  double f1 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;
  double f7 = 0.0;
};
PredictedDim3Coefficients predict_dim3_coefficients(double kappa, double mu,
                                                    double nu, double F, double a);

// "0.5" -> "05", "2" -> "2": the suffix style used for deformed entry names.
std::string deformed_name(const std::string& base, double a);

}  // namespace deformation
}  // namespace kmnv
