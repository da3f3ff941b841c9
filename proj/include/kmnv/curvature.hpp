#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "kmnv/geometry.hpp"
#include "kmnv/structure.hpp"

namespace kmnv {

using MatrixField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

// Levi-Civita data of a manifold at one point, computed from first
// principles: connection coefficients from the metric (Christoffel symbols in
// a chart, Koszul constants in an orthonormal frame), then the full Riemann
// tensor, Ricci operator, and scalar curvature.
//
// Conventions, fixed project-wide:
//   R(X, Y) Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X, Y] Z
//   Q X = sum_i R(X, b_i) b_i over a g-orthonormal basis (round spheres get
//         positive Ricci), tau = tr Q
//   K(X, Y) = g(R(X, Y) Y, X) / (|X|^2 |Y|^2 - g(X, Y)^2)
class Curvature {
 public:
  Curvature(const Geometry& geo, const Eigen::VectorXd& p);

  const Geometry& geometry() const { return *geo_; }
  const PointData& point() const { return pd_; }
  const Eigen::MatrixXd& h() const { return h_; }

  // Connection coefficients: gamma(i).col(j) = components of nabla_{E_i} E_j.
  const Eigen::MatrixXd& gamma(int i) const { return gamma_[static_cast<std::size_t>(i)]; }

  // Curvature operator on basis pairs: riemann(i, j).col(k) = R(E_i, E_j) E_k.
  const Eigen::MatrixXd& riemann(int i, int j) const {
    return riem_[static_cast<std::size_t>(i * dim() + j)];
  }

  // Bilinear extension to arbitrary component vectors.
  Eigen::VectorXd r(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                    const Eigen::VectorXd& Z) const;
  double r_lowered(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                   const Eigen::VectorXd& Z, const Eigen::VectorXd& W) const;

  const Eigen::MatrixXd& ricci() const { return q_; }
  double scalar() const { return tau_; }

  double sectional(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const;
  // K(X, phi X); X must not be proportional to xi.
  double phi_sectional(const Eigen::VectorXd& X) const;

  // nabla_{E_i} Y at the base point for a vector field Y.
  Eigen::VectorXd covariant_vector_field(const VectorField& Y, int i) const;
  // nabla_{E_i} T for a (1,1)-tensor field T: partial_i T + [gamma_i, T].
  Eigen::MatrixXd covariant_operator_field(const MatrixField& T, int i) const;

  int dim() const { return static_cast<int>(pd_.g.rows()); }

 private:
  const Geometry* geo_;
  PointData pd_;
  Eigen::MatrixXd h_;
  std::vector<Eigen::MatrixXd> gamma_;
  std::vector<Eigen::MatrixXd> riem_;
  Eigen::MatrixXd q_;
  double tau_ = 0.0;
};

namespace curvature_detail {
// Componentwise central difference (optionally Richardson-extrapolated) of a
// matrix-valued function along one axis; shared by the connection and the
// covariant-derivative helpers.
Eigen::MatrixXd fd_matrix(const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& F,
                          const Eigen::VectorXd& p, int axis, const FdConfig& fd);
// All connection coefficient matrices at q (no curvature).
std::vector<Eigen::MatrixXd> connection_at(const Geometry& geo, const Eigen::VectorXd& q);
}  // namespace curvature_detail

}  // namespace kmnv
