#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "kmnv/curvature.hpp"
#include "kmnv/pointmodel.hpp"

namespace kmnv {
namespace kmn {

using TrilinearFn = std::function<Eigen::VectorXd(
    const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&)>;

// Least-squares reading of R(X, Y) xi against
//   kappa { eta(Y) X - eta(X) Y } + mu { eta(Y) hX - eta(X) hY }
//     + nu { eta(Y) phihX - eta(X) phihY }
// over all orthonormal basis pairs, including the pairs orthogonal to xi
// (whose predicted value is zero, so they feed the residual, not the fit).
// When h is negligible the mu and nu columns vanish; they are dropped from
// the fit and reported as zero with h_degenerate set.
struct Extraction {
  double kappa = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double residual = 0.0;
  bool h_degenerate = false;
  double h_norm = 0.0;   // largest |eigenvalue| of h
  double lambda = 0.0;   // sqrt(1 - kappa) when kappa <= 1, else NaN
};

Extraction extract(const Curvature& c);
Extraction extract_model(const StructureTensors& m, const TrilinearFn& R);

// Pointwise least-squares fit of a full curvature operator against the eight
// generators, with rank / null-space reporting. f is the minimal-norm
// solution; null_space has orthonormal columns spanning the aliasing
// directions (combinations of generators that vanish identically at this
// structure), so two coefficient vectors describe the same tensor exactly
// when their difference lies in its span.
struct FormFit {
  std::array<double, 8> f{};
  double residual = 0.0;
  int rank = 0;
  int nullity = 0;
  Eigen::MatrixXd null_space;  // 8 x nullity
};

FormFit fit_form(const Curvature& c);
FormFit fit_form_model(const StructureTensors& m, const TrilinearFn& R);

// Component of f orthogonal to the fit's null space (the identifiable part).
std::array<double, 8> project_out_null(const FormFit& fit, const std::array<double, 8>& f);

// phi-sectional curvature K(e, phi e) at the canonical section: e the
// largest-eigenvalue unit eigenvector of h when h != 0, otherwise the first
// orthonormal direction transverse to xi.
double phi_sectional_invariant(const Curvature& c);

// Closed dim-3 forms; each returns the max-abs residual over basis triples
// (or matrix entries) at the point of c. Only meaningful when c.dim() == 3.
//   theorem:    R = (tau/2 - 2 kappa) R1 + (tau/2 - 3 kappa) R3 + mu R4 + nu R7
//   corollary:  R = F R1 + (F - kappa) R3 + mu R4 + nu R7, with F measured
//   ricci:      Q = (tau/2 - kappa) I + (3 kappa - tau/2) eta (x) xi
//                 + mu h + nu phi h
//   via_ricci:  R(X,Y)Z = g(Y,Z)QX - g(X,Z)QY + g(QY,Z)X - g(QX,Z)Y
//                 - (tau/2)(g(Y,Z)X - g(X,Z)Y)
double dim3_theorem_residual(const Curvature& c, const Extraction& e);
double dim3_corollary_residual(const Curvature& c, const Extraction& e, double F);
double dim3_ricci_residual(const Curvature& c, const Extraction& e);
double dim3_via_ricci_residual(const Curvature& c);

// The rigid coefficient family available in dimension >= 5 once the structure
// is not K-contact, parameterized by the constant f6 > -1:
//   f1 = (f6+1)/2, f2 = (f6-1)/2, f3 = (3 f6+1)/2, f4 = 1, f5 = 1/2,
//   f7 = f8 = 0, with kappa = -f6, mu = 1 - f6, F = 2 f6 - 1.
std::array<double, 8> rigid_family_coefficients(double f6);

struct NamedResidual {
  std::string relation;
  double residual = 0.0;
};
// How far an arbitrary coefficient vector sits from the rigid family.
std::vector<NamedResidual> rigid_family_residuals(const std::array<double, 8>& f);

}  // namespace kmn
}  // namespace kmnv
