#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "kmnv/manifold.hpp"

namespace kmnv {

// Fields are plain functions of the evaluation point. In a coordinate chart
// the components refer to the coordinate basis; in the frame backend they
// refer to the orthonormal frame, and differentiating a scalar along E_i is
// the i-th partial derivative of its component function (exact for the
// constant fields the frame backend declares).
using ScalarField = std::function<double(const Eigen::VectorXd&)>;
using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using CovectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

class Geometry {
 public:
  explicit Geometry(ManifoldSpec spec);

  const ManifoldSpec& spec() const { return spec_; }
  int dim() const { return spec_.dimension; }
  const FdConfig& fd() const { return spec_.fd; }

  // Raw field evaluation.
  Eigen::MatrixXd metric_at(const Eigen::VectorXd& p) const;
  Eigen::MatrixXd phi_at(const Eigen::VectorXd& p) const;
  Eigen::VectorXd xi_at(const Eigen::VectorXd& p) const;

  // Metric, inverse, phi, xi, eta bundled; throws NumericError when the
  // declared metric is singular at p.
  PointData at(const Eigen::VectorXd& p) const;

  // Partial derivative of a scalar function along basis direction `axis`.
  double partial(const ScalarField& f, const Eigen::VectorXd& p, int axis) const;

  // Derivative of f along the vector field X (components times partials).
  double directional(const ScalarField& f, const VectorField& X,
                     const Eigen::VectorXd& p) const;

  // Commutator [X, Y]; includes the frame bracket correction
  // X^i Y^j [E_i, E_j] when the basis fields do not commute.
  Eigen::VectorXd lie_bracket(const VectorField& X, const VectorField& Y,
                              const Eigen::VectorXd& p) const;

  // Exterior derivative of a 1-form, normalized so that
  //   d omega(X, Y) = (X(omega(Y)) - Y(omega(X)) - omega([X, Y])) / 2.
  double d_one_form(const CovectorField& omega, const VectorField& X,
                    const VectorField& Y, const Eigen::VectorXd& p) const;

  // Constant-component vector field along basis direction i.
  VectorField basis_field(int i) const;

  // Points a verification battery should visit: the interior grid of the
  // declared sample box for a chart, or the origin for a frame (where every
  // declared field is constant).
  std::vector<Eigen::VectorXd> sample_points() const;

 private:
  ManifoldSpec spec_;
};

}  // namespace kmnv
