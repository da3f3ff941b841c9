#include "kmnv/conformal.hpp"

#include <cmath>

#include "kmnv/structure.hpp"
#include "kmnv/util.hpp"

namespace kmnv {
namespace conformal {

Eigen::MatrixXd schouten(const Eigen::MatrixXd& Q, double tau) {
  const int dim = static_cast<int>(Q.rows());
  const double a = static_cast<double>(dim - 2);
  const double b = 2.0 * static_cast<double>(dim - 1) * a;
  return -Q / a + (tau / b) * Eigen::MatrixXd::Identity(dim, dim);
}

Eigen::MatrixXd schouten(const Curvature& c) {
  return schouten(c.ricci(), c.scalar());
}

namespace {

Eigen::VectorXd weyl_impl(const Eigen::MatrixXd& g, const kmn::TrilinearFn& R,
                          const Eigen::MatrixXd& L, const Eigen::VectorXd& X,
                          const Eigen::VectorXd& Y, const Eigen::VectorXd& Z) {
  auto ip = [&g](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.dot(g * b);
  };
  return R(X, Y, Z) - (ip(L * X, Z) * Y - ip(L * Y, Z) * X + ip(X, Z) * (L * Y) -
                       ip(Y, Z) * (L * X));
}

double weyl_norm_impl(const Eigen::MatrixXd& g, const Eigen::VectorXd& xi,
                      const kmn::TrilinearFn& R, const Eigen::MatrixXd& L) {
  const int n = static_cast<int>(g.rows());
  const Eigen::MatrixXd B = structure::orthonormal_basis(g, xi);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        worst = std::max(worst, weyl_impl(g, R, L, B.col(i), B.col(j), B.col(k))
                                    .cwiseAbs()
                                    .maxCoeff());
  return worst;
}

}  // namespace

Eigen::VectorXd weyl(const Curvature& c, const Eigen::VectorXd& X,
                     const Eigen::VectorXd& Y, const Eigen::VectorXd& Z) {
  auto R = [&c](const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                const Eigen::VectorXd& d) { return c.r(a, b, d); };
  return weyl_impl(c.point().g, R, schouten(c), X, Y, Z);
}

Eigen::VectorXd weyl_model(const StructureTensors& m, const kmn::TrilinearFn& R,
                           const Eigen::MatrixXd& L, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y, const Eigen::VectorXd& Z) {
  return weyl_impl(m.g, R, L, X, Y, Z);
}

double weyl_norm(const Curvature& c) {
  auto R = [&c](const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                const Eigen::VectorXd& d) { return c.r(a, b, d); };
  return weyl_norm_impl(c.point().g, c.point().xi, R, schouten(c));
}

double weyl_norm_model(const StructureTensors& m, const kmn::TrilinearFn& R,
                       const Eigen::MatrixXd& L) {
  return weyl_norm_impl(m.g, m.xi, R, L);
}

RicciCoefficients ricci_coefficients(const std::array<double, 8>& f, int n) {
  const double nn = static_cast<double>(n);
  RicciCoefficients out;
  out.id = 2.0 * nn * f[0] + 3.0 * f[1] - f[2];
  out.eta_xi = -(3.0 * f[1] + (2.0 * nn - 1.0) * f[2]);
  out.h_coef = (2.0 * nn - 1.0) * f[3] - f[5];
  out.phih_coef = (2.0 * nn - 1.0) * f[6] - f[7];
  out.tau = 2.0 * nn * ((2.0 * nn + 1.0) * f[0] + 3.0 * f[1] - 2.0 * f[2]);
  return out;
}

std::array<double, 8> weyl_coefficients(const std::array<double, 8>& f, int n) {
  const double m = 2.0 * static_cast<double>(n) - 1.0;
  return {-3.0 * f[1] / m, f[1], -3.0 * f[1] / m, f[5] / m,
          f[4],            f[5], f[7] / m,        f[7]};
}

Eigen::VectorXd codazzi_vector(const Geometry& geo, const Eigen::VectorXd& p,
                               int i, int j) {
  Curvature c(geo, p);
  MatrixField L_field = [&geo](const Eigen::VectorXd& q) {
    Curvature cq(geo, q);
    return schouten(cq);
  };
  const Eigen::MatrixXd di = c.covariant_operator_field(L_field, i);
  const Eigen::MatrixXd dj = c.covariant_operator_field(L_field, j);
  return di.col(j) - dj.col(i);
}

double codazzi_residual(const Geometry& geo, const Eigen::VectorXd& p) {
  Curvature c(geo, p);
  MatrixField L_field = [&geo](const Eigen::VectorXd& q) {
    Curvature cq(geo, q);
    return schouten(cq);
  };
  const int n = geo.dim();
  std::vector<Eigen::MatrixXd> dL(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    dL[static_cast<std::size_t>(i)] = c.covariant_operator_field(L_field, i);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd v = dL[static_cast<std::size_t>(i)].col(j) -
                                dL[static_cast<std::size_t>(j)].col(i);
      worst = std::max(worst, v.cwiseAbs().maxCoeff());
    }
  return worst;
}

FlatnessVerdict conformal_flatness(const Geometry& geo,
                                   const std::vector<Eigen::VectorXd>& pts,
                                   double tol) {
  FlatnessVerdict out;
  out.criterion = geo.dim() == 3 ? "(nabla_X L)Y = (nabla_Y L)X" : "weyl = 0";
  for (const auto& p : pts) {
    const double r = geo.dim() == 3 ? codazzi_residual(geo, p)
                                    : weyl_norm(Curvature(geo, p));
    out.residual = std::max(out.residual, r);
  }
  out.flat = out.residual < tol;
  return out;
}

}  // namespace conformal
}  // namespace kmnv
