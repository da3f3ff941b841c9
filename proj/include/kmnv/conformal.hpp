#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "kmnv/curvature.hpp"
#include "kmnv/kmn.hpp"
#include "kmnv/pointmodel.hpp"

namespace kmnv {
namespace conformal {

// Schouten operator L = -Q/(dim - 2) + tau I/(2 (dim - 1)(dim - 2)).
Eigen::MatrixXd schouten(const Eigen::MatrixXd& Q, double tau);
Eigen::MatrixXd schouten(const Curvature& c);

// Weyl operator W(X,Y)Z = R(X,Y)Z
//   - ( g(LX,Z) Y - g(LY,Z) X + g(X,Z) LY - g(Y,Z) LX ).
Eigen::VectorXd weyl(const Curvature& c, const Eigen::VectorXd& X,
                     const Eigen::VectorXd& Y, const Eigen::VectorXd& Z);
Eigen::VectorXd weyl_model(const StructureTensors& m, const kmn::TrilinearFn& R,
                           const Eigen::MatrixXd& L, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y, const Eigen::VectorXd& Z);

// Max-abs Weyl component over orthonormal basis triples.
double weyl_norm(const Curvature& c);
double weyl_norm_model(const StructureTensors& m, const kmn::TrilinearFn& R,
                       const Eigen::MatrixXd& L);

// Ricci data predicted for R = sum f_i R_i in dimension 2n+1:
//   Q = id I + eta_xi eta (x) xi + h_coef h + phih_coef phi h, tau = tr Q.
struct RicciCoefficients {
  double id = 0.0;
  double eta_xi = 0.0;
  double h_coef = 0.0;
  double phih_coef = 0.0;
  double tau = 0.0;
};
RicciCoefficients ricci_coefficients(const std::array<double, 8>& f, int n);

// Weyl coefficients predicted for a space form: W = sum w_i R_i.
std::array<double, 8> weyl_coefficients(const std::array<double, 8>& f, int n);

// Schouten-Codazzi tensor C(E_i, E_j) = (nabla_i L) E_j - (nabla_j L) E_i at
// p, with L evaluated as a field (each evaluation runs the full curvature
// pipeline at the shifted point). Conformal flatness in dimension 3 is
// C = 0; in dimension >= 5 it is W = 0.
Eigen::VectorXd codazzi_vector(const Geometry& geo, const Eigen::VectorXd& p,
                               int i, int j);
double codazzi_residual(const Geometry& geo, const Eigen::VectorXd& p);

struct FlatnessVerdict {
  bool flat = false;
  double residual = 0.0;
  std::string criterion;  // "weyl = 0" or "(nabla_X L)Y = (nabla_Y L)X"
};
FlatnessVerdict conformal_flatness(const Geometry& geo,
                                   const std::vector<Eigen::VectorXd>& pts,
                                   double tol);

}  // namespace conformal
}  // namespace kmnv
