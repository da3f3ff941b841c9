#pragma once

#include <Eigen/Dense>
#include <array>

#include "kmnv/manifold.hpp"

namespace kmnv {

// Pointwise algebraic data (g, phi, xi, eta, h) detached from any manifold:
// everything the curvature generators below need. Obtained either from an
// evaluated manifold point or synthetically from the flat model.
struct StructureTensors {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  Eigen::MatrixXd phi;
  Eigen::MatrixXd h;
  Eigen::VectorXd xi;
  Eigen::VectorXd eta;

  static StructureTensors from_point(const PointData& d, const Eigen::MatrixXd& h);

  // Flat algebraic model on R^dim with basis [X_1..X_n, phi X_1..phi X_n, xi]:
  // g = I, phi the standard block rotation, h = diag(lambda, ..., -lambda, ..., 0).
  static StructureTensors standard_model(int dim, double lambda);

  int dim() const { return static_cast<int>(g.rows()); }
};

// The eight curvature generators built from the structure tensors, applied to
// component vectors; `which` runs 1..8:
//   1: g(Y,Z) X - g(X,Z) Y
//   2: g(X,phiZ) phiY - g(Y,phiZ) phiX + 2 g(X,phiY) phiZ
//   3: eta(X) eta(Z) Y - eta(Y) eta(Z) X + g(X,Z) eta(Y) xi - g(Y,Z) eta(X) xi
//   4: g(Y,Z) hX - g(X,Z) hY + g(hY,Z) X - g(hX,Z) Y
//   5: g(hY,Z) hX - g(hX,Z) hY + g(phihX,Z) phihY - g(phihY,Z) phihX
//   6: eta(X) eta(Z) hY - eta(Y) eta(Z) hX + g(hX,Z) eta(Y) xi - g(hY,Z) eta(X) xi
//   7: g(Y,Z) phihX - g(X,Z) phihY + g(phihY,Z) X - g(phihX,Z) Y
//   8: eta(X) eta(Z) phihY - eta(Y) eta(Z) phihX
//      + g(phihX,Z) eta(Y) xi - g(phihY,Z) eta(X) xi
Eigen::VectorXd basis_tensor(const StructureTensors& m, int which,
                             const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                             const Eigen::VectorXd& Z);

// R = sum_i f_i R_i evaluated on (X, Y, Z).
Eigen::VectorXd synthetic_curvature(const StructureTensors& m,
                                    const std::array<double, 8>& f,
                                    const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                    const Eigen::VectorXd& Z);

// kappa { eta(Y) X - eta(X) Y } + mu { eta(Y) hX - eta(X) hY }
//   + nu { eta(Y) phihX - eta(X) phihY }: the value the curvature operator
// must take on (X, Y, xi).
Eigen::VectorXd kmn_ansatz(const StructureTensors& m, double kappa, double mu,
                           double nu, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y);

}  // namespace kmnv
