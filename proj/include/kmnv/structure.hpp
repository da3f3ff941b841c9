#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kmnv/geometry.hpp"

namespace kmnv {
namespace structure {

// One named residual from an identity battery. `identity` is a short formula
// string ("phi^2 = -I + xi (x) eta", ...) and `residual` the max-abs deviation.
struct Residual {
  std::string identity;
  double residual = 0.0;
};

// The tensor h = (1/2) L_xi phi at p, as mixed components: column j holds
// (1/2)([xi, phi E_j] - phi [xi, E_j]).
Eigen::MatrixXd h_operator(const Geometry& geo, const Eigen::VectorXd& p);

// Almost-contact metric axioms at one evaluated point:
//   eta(xi) = 1, phi xi = 0, eta o phi = 0, phi^2 = -I + xi (x) eta,
//   g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y), Phi antisymmetric.
std::vector<Residual> axiom_residuals(const PointData& d);

// Contact condition d eta = Phi, max residual over all basis pairs at p.
double contact_residual(const Geometry& geo, const Eigen::VectorXd& p);

// Identities satisfied by h on any contact metric manifold:
//   h xi = 0, tr h = 0, eta o h = 0, h phi + phi h = 0, g h symmetric.
std::vector<Residual> h_residuals(const PointData& d, const Eigen::MatrixXd& h);

// Largest h eigenvalue magnitude; for contact metric structures the spectrum
// is {lambda_i, -lambda_i, 0} and this equals the lambda of the model frame.
double h_spread(const PointData& d, const Eigen::MatrixXd& h);

enum class ContactClass { ContactMetric, KContact, Sasakian };

// Decision only; the caller supplies the measured invariants.
//   h_norm             operator norm of h (max over sample points)
//   sasakian_residual  max deviation of (nabla_X phi) Y = g(X, Y) xi - eta(Y) X
ContactClass classify(double h_norm, double sasakian_residual, double tol);

const char* contact_class_name(ContactClass c);

// Columns [X_1..X_n, phi X_1..phi X_n, xi]: a g-orthonormal basis adapted to
// phi, built by Gram-Schmidt against g with xi kept as the final column.
// Throws NumericError if the structure at d is too degenerate to span one.
Eigen::MatrixXd phi_adapted_basis(const Eigen::MatrixXd& g, const Eigen::MatrixXd& phi,
                                  const Eigen::VectorXd& xi);
Eigen::MatrixXd phi_adapted_basis(const PointData& d);

// Any g-orthonormal basis with xi as the final column (no phi adaptation);
// cheaper and always available when g is positive definite.
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& g, const Eigen::VectorXd& xi);
Eigen::MatrixXd orthonormal_basis(const PointData& d);

}  // namespace structure
}  // namespace kmnv
