#include "kmnv/geometry.hpp"

#include <cmath>

namespace kmnv {

namespace {

Eigen::MatrixXd eval_matrix(const std::vector<std::vector<Expr>>& m,
                            const Eigen::VectorXd& p,
                            const std::vector<double>& consts) {
  const int dim = static_cast<int>(m.size());
  Eigen::MatrixXd out(dim, dim);
  std::span<const double> coords(p.data(), static_cast<std::size_t>(p.size()));
  std::span<const double> cs(consts.data(), consts.size());
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) out(r, c) = m[r][c].evaluate(coords, cs);
  return out;
}

}  // namespace

Geometry::Geometry(ManifoldSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

Eigen::MatrixXd Geometry::metric_at(const Eigen::VectorXd& p) const {
  if (spec_.backend == Backend::OrthonormalFrame)
    return Eigen::MatrixXd::Identity(dim(), dim());
  return eval_matrix(spec_.metric, p, spec_.constant_values);
}

Eigen::MatrixXd Geometry::phi_at(const Eigen::VectorXd& p) const {
  if (spec_.backend == Backend::OrthonormalFrame) return spec_.phi_frame;
  return eval_matrix(spec_.phi, p, spec_.constant_values);
}

Eigen::VectorXd Geometry::xi_at(const Eigen::VectorXd& p) const {
  if (spec_.backend == Backend::OrthonormalFrame) return spec_.xi_frame;
  Eigen::VectorXd out(dim());
  std::span<const double> coords(p.data(), static_cast<std::size_t>(p.size()));
  std::span<const double> cs(spec_.constant_values.data(), spec_.constant_values.size());
  for (int i = 0; i < dim(); ++i) out[i] = spec_.xi[i].evaluate(coords, cs);
  return out;
}

PointData Geometry::at(const Eigen::VectorXd& p) const {
  PointData d;
  d.point = p;
  d.g = metric_at(p);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(d.g);
  if (!lu.isInvertible())
    throw NumericError(spec_.name + ": metric is singular at a sample point");
  d.g_inv = lu.inverse();
  d.phi = phi_at(p);
  d.xi = xi_at(p);
  d.eta = d.g * d.xi;
  return d;
}

double Geometry::partial(const ScalarField& f, const Eigen::VectorXd& p,
                         int axis) const {
  return numdiff::first(
      [&](double t) {
        Eigen::VectorXd q = p;
        q[axis] += t;
        return f(q);
      },
      spec_.fd);
}

double Geometry::directional(const ScalarField& f, const VectorField& X,
                             const Eigen::VectorXd& p) const {
  const Eigen::VectorXd xc = X(p);
  double out = 0.0;
  for (int i = 0; i < dim(); ++i)
    if (xc[i] != 0.0) out += xc[i] * partial(f, p, i);
  return out;
}

Eigen::VectorXd Geometry::lie_bracket(const VectorField& X, const VectorField& Y,
                                      const Eigen::VectorXd& p) const {
  const int n = dim();
  const Eigen::VectorXd xc = X(p);
  const Eigen::VectorXd yc = Y(p);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    ScalarField yk = [&Y, k](const Eigen::VectorXd& q) { return Y(q)[k]; };
    ScalarField xk = [&X, k](const Eigen::VectorXd& q) { return X(q)[k]; };
    out[k] = directional(yk, X, p) - directional(xk, Y, p);
  }
  if (spec_.backend == Backend::OrthonormalFrame) {
    for (int i = 0; i < n; ++i) {
      if (xc[i] == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        if (yc[j] == 0.0 || i == j) continue;
        out += xc[i] * yc[j] * spec_.bracket(i, j);
      }
    }
  }
  return out;
}

double Geometry::d_one_form(const CovectorField& omega, const VectorField& X,
                            const VectorField& Y, const Eigen::VectorXd& p) const {
  ScalarField omega_Y = [&](const Eigen::VectorXd& q) { return omega(q).dot(Y(q)); };
  ScalarField omega_X = [&](const Eigen::VectorXd& q) { return omega(q).dot(X(q)); };
  const double term = directional(omega_Y, X, p) - directional(omega_X, Y, p) -
                      omega(p).dot(lie_bracket(X, Y, p));
  return 0.5 * term;
}

VectorField Geometry::basis_field(int i) const {
  const int n = dim();
  return [n, i](const Eigen::VectorXd&) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = 1.0;
    return e;
  };
}

std::vector<Eigen::VectorXd> Geometry::sample_points() const {
  if (spec_.backend == Backend::OrthonormalFrame)
    return {Eigen::VectorXd::Zero(dim())};
  return spec_.domain.points();
}

}  // namespace kmnv
