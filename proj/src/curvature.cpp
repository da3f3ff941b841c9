#include "kmnv/curvature.hpp"

#include <cmath>

#include "kmnv/util.hpp"

namespace kmnv {

namespace curvature_detail {

Eigen::MatrixXd fd_matrix(const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& F,
                          const Eigen::VectorXd& p, int axis, const FdConfig& fd) {
  auto central = [&](double s) {
    Eigen::VectorXd qp = p, qm = p;
    qp[axis] += s;
    qm[axis] -= s;
    return Eigen::MatrixXd(((F(qp) - F(qm)) / (2.0 * s)).eval());
  };
  if (!fd.richardson) return central(fd.step);
  const Eigen::MatrixXd d1 = central(fd.step);
  const Eigen::MatrixXd d2 = central(fd.step / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

std::vector<Eigen::MatrixXd> connection_at(const Geometry& geo,
                                           const Eigen::VectorXd& q) {
  const int n = geo.dim();
  std::vector<Eigen::MatrixXd> gamma(static_cast<std::size_t>(n));
  if (geo.spec().backend == Backend::OrthonormalFrame) {
    // Koszul constants of an orthonormal frame with Lie brackets
    // [E_i, E_j] = c^k_ij E_k:  omega^k_ij = (c^k_ij - c^i_jk + c^j_ki) / 2,
    // where omega^k_ij is the E_k component of nabla_{E_i} E_j.
    std::vector<Eigen::VectorXd> c(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        c[static_cast<std::size_t>(i * n + j)] = geo.spec().bracket(i, j);
    auto cc = [&](int k, int i, int j) {
      return c[static_cast<std::size_t>(i * n + j)][k];
    };
    for (int i = 0; i < n; ++i) {
      gamma[static_cast<std::size_t>(i)] = Eigen::MatrixXd::Zero(n, n);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          gamma[static_cast<std::size_t>(i)](k, j) =
              0.5 * (cc(k, i, j) - cc(i, j, k) + cc(j, k, i));
    }
    return gamma;
  }
  // Christoffel symbols: Gamma^l_ij = g^lm (d_i g_mj + d_j g_mi - d_m g_ij) / 2.
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(n));
  auto metric = [&geo](const Eigen::VectorXd& x) { return geo.metric_at(x); };
  for (int m = 0; m < n; ++m)
    dg[static_cast<std::size_t>(m)] = fd_matrix(metric, q, m, geo.fd());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(geo.metric_at(q));
  if (!lu.isInvertible())
    throw NumericError(geo.spec().name + ": metric is singular at a stencil point");
  const Eigen::MatrixXd g_inv = lu.inverse();
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd lower(n, n);  // lower(m, j) = (d_i g_mj + d_j g_mi - d_m g_ij) / 2
    for (int m = 0; m < n; ++m)
      for (int j = 0; j < n; ++j)
        lower(m, j) = 0.5 * (dg[static_cast<std::size_t>(i)](m, j) +
                             dg[static_cast<std::size_t>(j)](m, i) -
                             dg[static_cast<std::size_t>(m)](i, j));
    gamma[static_cast<std::size_t>(i)] = g_inv * lower;
  }
  return gamma;
}

}  // namespace curvature_detail

Curvature::Curvature(const Geometry& geo, const Eigen::VectorXd& p)
    : geo_(&geo), pd_(geo.at(p)), h_(structure::h_operator(geo, p)) {
  const int n = dim();
  gamma_ = curvature_detail::connection_at(geo, p);

  riem_.assign(static_cast<std::size_t>(n * n), Eigen::MatrixXd::Zero(n, n));
  const bool chart = geo.spec().backend == Backend::CoordinateChart;
  // d_i of the full connection, only where the coefficients actually vary.
  std::vector<std::vector<Eigen::MatrixXd>> dgamma;
  if (chart) {
    dgamma.assign(static_cast<std::size_t>(n),
                  std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      // One stencil per axis differentiates every coefficient matrix at once.
      auto conn_diff = [&](double s) {
        Eigen::VectorXd qp = p, qm = p;
        qp[i] += s;
        qm[i] -= s;
        const auto cp = curvature_detail::connection_at(geo, qp);
        const auto cm = curvature_detail::connection_at(geo, qm);
        std::vector<Eigen::MatrixXd> d(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
          d[static_cast<std::size_t>(j)] =
              (cp[static_cast<std::size_t>(j)] - cm[static_cast<std::size_t>(j)]) /
              (2.0 * s);
        return d;
      };
      if (geo.fd().richardson) {
        const auto d1 = conn_diff(geo.fd().step);
        const auto d2 = conn_diff(geo.fd().step / 2.0);
        for (int j = 0; j < n; ++j)
          dgamma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              (4.0 * d2[static_cast<std::size_t>(j)] -
               d1[static_cast<std::size_t>(j)]) /
              3.0;
      } else {
        dgamma[static_cast<std::size_t>(i)] = conn_diff(geo.fd().step);
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Eigen::MatrixXd rij = gamma_[static_cast<std::size_t>(i)] *
                                gamma_[static_cast<std::size_t>(j)] -
                            gamma_[static_cast<std::size_t>(j)] *
                                gamma_[static_cast<std::size_t>(i)];
      if (chart) {
        rij += dgamma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
               dgamma[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      } else {
        const Eigen::VectorXd cij = geo.spec().bracket(i, j);
        for (int m = 0; m < n; ++m)
          if (cij[m] != 0.0) rij -= cij[m] * gamma_[static_cast<std::size_t>(m)];
      }
      riem_[static_cast<std::size_t>(i * n + j)] = std::move(rij);
    }

  // Ricci operator over a g-orthonormal basis; positive on round spheres.
  const Eigen::MatrixXd B = structure::orthonormal_basis(pd_);
  q_ = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd ej = Eigen::VectorXd::Unit(n, j);
    Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
    for (int b = 0; b < n; ++b) col += r(ej, B.col(b), B.col(b));
    q_.col(j) = col;
  }
  tau_ = q_.trace();
}

Eigen::VectorXd Curvature::r(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                             const Eigen::VectorXd& Z) const {
  const int n = dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (X[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (Y[j] == 0.0 || i == j) continue;
      out += (X[i] * Y[j]) * (riem_[static_cast<std::size_t>(i * n + j)] * Z);
    }
  }
  return out;
}

double Curvature::r_lowered(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                            const Eigen::VectorXd& Z, const Eigen::VectorXd& W) const {
  return W.dot(pd_.g * r(X, Y, Z));
}

double Curvature::sectional(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const {
  const double xx = X.dot(pd_.g * X);
  const double yy = Y.dot(pd_.g * Y);
  const double xy = X.dot(pd_.g * Y);
  const double area2 = xx * yy - xy * xy;
  if (area2 < 1e-14)
    throw NumericError("sectional curvature of a degenerate plane");
  return r_lowered(X, Y, Y, X) / area2;
}

double Curvature::phi_sectional(const Eigen::VectorXd& X) const {
  // Project out the xi component so the plane is tangent to the phi
  // distribution, where phi X is an honest partner of X.
  const Eigen::VectorXd Xp = X - pd_.eta.dot(X) * pd_.xi;
  return sectional(Xp, pd_.phi * Xp);
}

Eigen::VectorXd Curvature::covariant_vector_field(const VectorField& Y, int i) const {
  auto Ymat = [&Y](const Eigen::VectorXd& q) {
    return Eigen::MatrixXd(Y(q));  // n x 1
  };
  const Eigen::MatrixXd dY = curvature_detail::fd_matrix(Ymat, pd_.point, i, geo_->fd());
  return dY.col(0) + gamma_[static_cast<std::size_t>(i)] * Y(pd_.point);
}

Eigen::MatrixXd Curvature::covariant_operator_field(const MatrixField& T, int i) const {
  const Eigen::MatrixXd dT = curvature_detail::fd_matrix(T, pd_.point, i, geo_->fd());
  const Eigen::MatrixXd Tp = T(pd_.point);
  return dT + gamma_[static_cast<std::size_t>(i)] * Tp -
         Tp * gamma_[static_cast<std::size_t>(i)];
}

}  // namespace kmnv
