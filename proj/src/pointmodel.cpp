#include "kmnv/pointmodel.hpp"

#include "kmnv/util.hpp"

namespace kmnv {

StructureTensors StructureTensors::from_point(const PointData& d,
                                              const Eigen::MatrixXd& h) {
  StructureTensors m;
  m.g = d.g;
  m.g_inv = d.g_inv;
  m.phi = d.phi;
  m.h = h;
  m.xi = d.xi;
  m.eta = d.eta;
  return m;
}

StructureTensors StructureTensors::standard_model(int dim, double lambda) {
  if (dim < 3 || dim % 2 == 0)
    throw ValidationError("model dimension must be odd and at least 3");
  const int n = (dim - 1) / 2;
  StructureTensors m;
  m.g = Eigen::MatrixXd::Identity(dim, dim);
  m.g_inv = m.g;
  m.phi = Eigen::MatrixXd::Zero(dim, dim);
  m.h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    m.phi(n + i, i) = 1.0;   // phi X_i = phi X_i-slot
    m.phi(i, n + i) = -1.0;  // phi (phi X_i) = -X_i
    m.h(i, i) = lambda;
    m.h(n + i, n + i) = -lambda;
  }
  m.xi = Eigen::VectorXd::Unit(dim, dim - 1);
  m.eta = m.xi;
  return m;
}

Eigen::VectorXd basis_tensor(const StructureTensors& m, int which,
                             const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                             const Eigen::VectorXd& Z) {
  auto ip = [&m](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.dot(m.g * b);
  };
  const auto& phi = m.phi;
  const auto& h = m.h;
  const double eX = m.eta.dot(X), eY = m.eta.dot(Y), eZ = m.eta.dot(Z);
  switch (which) {
    case 1:
      return ip(Y, Z) * X - ip(X, Z) * Y;
    case 2:
      return ip(X, phi * Z) * (phi * Y) - ip(Y, phi * Z) * (phi * X) +
             2.0 * ip(X, phi * Y) * (phi * Z);
    case 3:
      return eX * eZ * Y - eY * eZ * X + ip(X, Z) * eY * m.xi -
             ip(Y, Z) * eX * m.xi;
    case 4:
      return ip(Y, Z) * (h * X) - ip(X, Z) * (h * Y) + ip(h * Y, Z) * X -
             ip(h * X, Z) * Y;
    case 5:
      return ip(h * Y, Z) * (h * X) - ip(h * X, Z) * (h * Y) +
             ip(phi * h * X, Z) * (phi * h * Y) -
             ip(phi * h * Y, Z) * (phi * h * X);
    case 6:
      return eX * eZ * (h * Y) - eY * eZ * (h * X) + ip(h * X, Z) * eY * m.xi -
             ip(h * Y, Z) * eX * m.xi;
    case 7:
      return ip(Y, Z) * (phi * h * X) - ip(X, Z) * (phi * h * Y) +
             ip(phi * h * Y, Z) * X - ip(phi * h * X, Z) * Y;
    case 8:
      return eX * eZ * (phi * h * Y) - eY * eZ * (phi * h * X) +
             ip(phi * h * X, Z) * eY * m.xi - ip(phi * h * Y, Z) * eX * m.xi;
    default:
      throw ValidationError("basis tensor index must be 1..8");
  }
}

Eigen::VectorXd synthetic_curvature(const StructureTensors& m,
                                    const std::array<double, 8>& f,
                                    const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                    const Eigen::VectorXd& Z) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m.dim());
  for (int i = 0; i < 8; ++i)
    if (f[static_cast<std::size_t>(i)] != 0.0)
      out += f[static_cast<std::size_t>(i)] * basis_tensor(m, i + 1, X, Y, Z);
  return out;
}

Eigen::VectorXd kmn_ansatz(const StructureTensors& m, double kappa, double mu,
                           double nu, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y) {
  const double eX = m.eta.dot(X), eY = m.eta.dot(Y);
  return kappa * (eY * X - eX * Y) + mu * (eY * (m.h * X) - eX * (m.h * Y)) +
         nu * (eY * (m.phi * m.h * X) - eX * (m.phi * m.h * Y));
}

}  // namespace kmnv
