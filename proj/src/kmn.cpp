#include "kmnv/kmn.hpp"

#include <cmath>
#include <limits>

#include "kmnv/structure.hpp"
#include "kmnv/util.hpp"

namespace kmnv {
namespace kmn {

namespace {

constexpr double kDegenerateH = 1e-7;

Extraction extract_impl(const StructureTensors& m, const TrilinearFn& R) {
  const int n = m.dim();
  const Eigen::MatrixXd B = structure::orthonormal_basis(m.g, m.xi);
  const Eigen::MatrixXd phih = m.phi * m.h;

  // h eigenvalue magnitude through the g-symmetrized form.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hes;
  {
    Eigen::LLT<Eigen::MatrixXd> llt(m.g);
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::MatrixXd a = L.transpose() * m.h * L.transpose().inverse();
    hes.compute(0.5 * (a + a.transpose()));
  }
  const double h_norm = hes.eigenvalues().cwiseAbs().maxCoeff();
  const bool degenerate = h_norm < kDegenerateH;
  const int cols = degenerate ? 1 : 3;

  std::vector<Eigen::VectorXd> rows_lhs;
  std::vector<Eigen::MatrixXd> rows_design;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd X = B.col(i), Y = B.col(j);
      rows_lhs.push_back(R(X, Y, m.xi));
      const double eX = m.eta.dot(X), eY = m.eta.dot(Y);
      Eigen::MatrixXd D(n, cols);
      D.col(0) = eY * X - eX * Y;
      if (!degenerate) {
        D.col(1) = eY * (m.h * X) - eX * (m.h * Y);
        D.col(2) = eY * (phih * X) - eX * (phih * Y);
      }
      rows_design.push_back(std::move(D));
    }

  const int nrows = static_cast<int>(rows_lhs.size()) * n;
  Eigen::MatrixXd A(nrows, cols);
  Eigen::VectorXd y(nrows);
  for (std::size_t r = 0; r < rows_lhs.size(); ++r) {
    A.middleRows(static_cast<int>(r) * n, n) = rows_design[r];
    y.segment(static_cast<int>(r) * n, n) = rows_lhs[r];
  }
  const Eigen::VectorXd coef = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                                   .setThreshold(1e-10)
                                   .solve(y);
  Extraction out;
  out.kappa = coef[0];
  if (!degenerate) {
    out.mu = coef[1];
    out.nu = coef[2];
  }
  out.h_degenerate = degenerate;
  out.h_norm = h_norm;
  out.residual = (y - A * coef).cwiseAbs().maxCoeff();
  out.lambda = out.kappa <= 1.0 ? std::sqrt(1.0 - out.kappa)
                                : std::numeric_limits<double>::quiet_NaN();
  return out;
}

FormFit fit_impl(const StructureTensors& m, const TrilinearFn& R) {
  const int n = m.dim();
  const Eigen::MatrixXd B = structure::orthonormal_basis(m.g, m.xi);
  std::vector<Eigen::VectorXd> lhs;
  std::vector<std::array<Eigen::VectorXd, 8>> design;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        lhs.push_back(R(B.col(i), B.col(j), B.col(k)));
        std::array<Eigen::VectorXd, 8> d;
        for (int w = 0; w < 8; ++w)
          d[static_cast<std::size_t>(w)] =
              basis_tensor(m, w + 1, B.col(i), B.col(j), B.col(k));
        design.push_back(std::move(d));
      }
  const int nrows = static_cast<int>(lhs.size()) * n;
  Eigen::MatrixXd A(nrows, 8);
  Eigen::VectorXd y(nrows);
  for (std::size_t r = 0; r < lhs.size(); ++r) {
    y.segment(static_cast<int>(r) * n, n) = lhs[r];
    for (int w = 0; w < 8; ++w)
      A.block(static_cast<int>(r) * n, w, n, 1) =
          design[r][static_cast<std::size_t>(w)];
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
  svd.setThreshold(1e-8);
  const Eigen::VectorXd coef = svd.solve(y);
  FormFit out;
  for (int w = 0; w < 8; ++w) out.f[static_cast<std::size_t>(w)] = coef[w];
  out.rank = static_cast<int>(svd.rank());
  out.nullity = 8 - out.rank;
  out.null_space = svd.matrixV().rightCols(out.nullity);
  out.residual = (y - A * coef).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace

Extraction extract(const Curvature& c) {
  const StructureTensors m = StructureTensors::from_point(c.point(), c.h());
  return extract_impl(m, [&c](const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                              const Eigen::VectorXd& Z) { return c.r(X, Y, Z); });
}

Extraction extract_model(const StructureTensors& m, const TrilinearFn& R) {
  return extract_impl(m, R);
}

FormFit fit_form(const Curvature& c) {
  const StructureTensors m = StructureTensors::from_point(c.point(), c.h());
  return fit_impl(m, [&c](const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                          const Eigen::VectorXd& Z) { return c.r(X, Y, Z); });
}

FormFit fit_form_model(const StructureTensors& m, const TrilinearFn& R) {
  return fit_impl(m, R);
}

std::array<double, 8> project_out_null(const FormFit& fit,
                                       const std::array<double, 8>& f) {
  Eigen::VectorXd v(8);
  for (int i = 0; i < 8; ++i) v[i] = f[static_cast<std::size_t>(i)];
  if (fit.nullity > 0) v -= fit.null_space * (fit.null_space.transpose() * v);
  std::array<double, 8> out{};
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = v[i];
  return out;
}

double phi_sectional_invariant(const Curvature& c) {
  const PointData& d = c.point();
  Eigen::VectorXd e;
  // Prefer the top h eigenvector; it defines the canonical section when the
  // structure is not K-contact.
  Eigen::LLT<Eigen::MatrixXd> llt(d.g);
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd a = L.transpose() * c.h() * L.transpose().inverse();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()));
  const int top = c.dim() - 1;  // eigenvalues ascend; take the largest
  if (es.eigenvalues()[top] > kDegenerateH) {
    e = L.transpose().inverse() * es.eigenvectors().col(top);
    e /= std::sqrt(e.dot(d.g * e));
  } else {
    e = structure::orthonormal_basis(d).col(0);
  }
  return c.phi_sectional(e);
}

namespace {

// Max-abs deviation between the manifold curvature and a synthetic trilinear
// combination, over all coordinate-basis triples.
double triple_residual(const Curvature& c,
                       const std::function<Eigen::VectorXd(
                           const Eigen::VectorXd&, const Eigen::VectorXd&,
                           const Eigen::VectorXd&)>& model) {
  const int n = c.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd ei = Eigen::VectorXd::Unit(n, i);
        const Eigen::VectorXd ej = Eigen::VectorXd::Unit(n, j);
        const Eigen::VectorXd ek = Eigen::VectorXd::Unit(n, k);
        const Eigen::VectorXd diff = c.riemann(i, j).col(k) - model(ei, ej, ek);
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      }
  return worst;
}

}  // namespace

double dim3_theorem_residual(const Curvature& c, const Extraction& e) {
  const StructureTensors m = StructureTensors::from_point(c.point(), c.h());
  const double tau = c.scalar();
  const std::array<double, 8> f = {tau / 2.0 - 2.0 * e.kappa, 0.0,
                                   tau / 2.0 - 3.0 * e.kappa, e.mu,
                                   0.0,  0.0, e.nu, 0.0};
  return triple_residual(c, [&](const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                const Eigen::VectorXd& Z) {
    return synthetic_curvature(m, f, X, Y, Z);
  });
}

double dim3_corollary_residual(const Curvature& c, const Extraction& e, double F) {
  const StructureTensors m = StructureTensors::from_point(c.point(), c.h());
  const std::array<double, 8> f = {F, 0.0, F - e.kappa, e.mu, 0.0, 0.0, e.nu, 0.0};
  return triple_residual(c, [&](const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                const Eigen::VectorXd& Z) {
    return synthetic_curvature(m, f, X, Y, Z);
  });
}

double dim3_ricci_residual(const Curvature& c, const Extraction& e) {
  const PointData& d = c.point();
  const int n = c.dim();
  const double tau = c.scalar();
  const Eigen::MatrixXd model =
      (tau / 2.0 - e.kappa) * Eigen::MatrixXd::Identity(n, n) +
      (3.0 * e.kappa - tau / 2.0) * d.xi * d.eta.transpose() + e.mu * c.h() +
      e.nu * d.phi * c.h();
  return util::max_abs(c.ricci() - model);
}

double dim3_via_ricci_residual(const Curvature& c) {
  const PointData& d = c.point();
  const Eigen::MatrixXd& Q = c.ricci();
  const double tau = c.scalar();
  auto ip = [&d](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.dot(d.g * b);
  };
  return triple_residual(c, [&](const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                const Eigen::VectorXd& Z) {
    Eigen::VectorXd out = ip(Y, Z) * (Q * X) - ip(X, Z) * (Q * Y) +
                          ip(Q * Y, Z) * X - ip(Q * X, Z) * Y;
    out -= (tau / 2.0) * (ip(Y, Z) * X - ip(X, Z) * Y);
    return out;
  });
}

std::array<double, 8> rigid_family_coefficients(double f6) {
  return {(f6 + 1.0) / 2.0, (f6 - 1.0) / 2.0, (3.0 * f6 + 1.0) / 2.0, 1.0, 0.5,
          f6, 0.0, 0.0};
}

std::vector<NamedResidual> rigid_family_residuals(const std::array<double, 8>& f) {
  const double f6 = f[5];
  std::vector<NamedResidual> out;
  out.push_back({"f1 = (f6 + 1)/2", std::abs(f[0] - (f6 + 1.0) / 2.0)});
  out.push_back({"f2 = (f6 - 1)/2", std::abs(f[1] - (f6 - 1.0) / 2.0)});
  out.push_back({"f3 = (3 f6 + 1)/2", std::abs(f[2] - (3.0 * f6 + 1.0) / 2.0)});
  out.push_back({"f4 = 1", std::abs(f[3] - 1.0)});
  out.push_back({"f5 = 1/2", std::abs(f[4] - 0.5)});
  out.push_back({"f6 > -1", f6 > -1.0 ? 0.0 : -1.0 - f6});
  out.push_back({"f7 = 0", std::abs(f[6])});
  out.push_back({"f8 = 0", std::abs(f[7])});
  return out;
}

}  // namespace kmn
}  // namespace kmnv
