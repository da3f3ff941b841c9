#include "kmnv/structure.hpp"

#include <cmath>

#include "kmnv/util.hpp"

namespace kmnv {
namespace structure {

Eigen::MatrixXd h_operator(const Geometry& geo, const Eigen::VectorXd& p) {
  const int n = geo.dim();
  VectorField xi_field = [&geo](const Eigen::VectorXd& q) { return geo.xi_at(q); };
  Eigen::MatrixXd h(n, n);
  const Eigen::MatrixXd phi_p = geo.phi_at(p);
  for (int j = 0; j < n; ++j) {
    VectorField ej = geo.basis_field(j);
    VectorField phi_ej = [&geo, j](const Eigen::VectorXd& q) {
      return Eigen::VectorXd(geo.phi_at(q).col(j));
    };
    const Eigen::VectorXd lie_phi =
        geo.lie_bracket(xi_field, phi_ej, p) - phi_p * geo.lie_bracket(xi_field, ej, p);
    h.col(j) = 0.5 * lie_phi;
  }
  return h;
}

std::vector<Residual> axiom_residuals(const PointData& d) {
  const int n = static_cast<int>(d.g.rows());
  std::vector<Residual> out;
  out.push_back({"eta(xi) = 1", std::abs(d.eta.dot(d.xi) - 1.0)});
  out.push_back({"phi xi = 0", (d.phi * d.xi).cwiseAbs().maxCoeff()});
  out.push_back({"eta o phi = 0", (d.eta.transpose() * d.phi).cwiseAbs().maxCoeff()});
  out.push_back({"phi^2 = -I + xi (x) eta",
                 util::max_abs(d.phi * d.phi + Eigen::MatrixXd::Identity(n, n) -
                               d.xi * d.eta.transpose())});
  out.push_back({"g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)",
                 util::max_abs(d.phi.transpose() * d.g * d.phi -
                               (d.g - d.eta * d.eta.transpose()))});
  const Eigen::MatrixXd Phi = d.g * d.phi;
  out.push_back({"Phi(X, Y) = -Phi(Y, X)", util::max_abs(Phi + Phi.transpose())});
  return out;
}

double contact_residual(const Geometry& geo, const Eigen::VectorXd& p) {
  const int n = geo.dim();
  CovectorField eta = [&geo](const Eigen::VectorXd& q) {
    return Eigen::VectorXd(geo.metric_at(q) * geo.xi_at(q));
  };
  const PointData d = geo.at(p);
  const Eigen::MatrixXd Phi = d.g * d.phi;  // Phi(X, Y) = g(X, phi Y)
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double deta =
          geo.d_one_form(eta, geo.basis_field(i), geo.basis_field(j), p);
      worst = std::max(worst, std::abs(deta - Phi(i, j)));
    }
  return worst;
}

std::vector<Residual> h_residuals(const PointData& d, const Eigen::MatrixXd& h) {
  std::vector<Residual> out;
  out.push_back({"h xi = 0", (h * d.xi).cwiseAbs().maxCoeff()});
  out.push_back({"tr h = 0", std::abs(h.trace())});
  out.push_back({"eta o h = 0", (d.eta.transpose() * h).cwiseAbs().maxCoeff()});
  out.push_back({"h phi + phi h = 0", util::max_abs(h * d.phi + d.phi * h)});
  const Eigen::MatrixXd gh = d.g * h;
  out.push_back({"g(h X, Y) = g(X, h Y)", util::max_abs(gh - gh.transpose())});
  return out;
}

double h_spread(const PointData& d, const Eigen::MatrixXd& h) {
  // g h is symmetric, so h is diagonalizable with real spectrum; measure it
  // through the g-symmetrized form to stay robust to FD noise.
  Eigen::LLT<Eigen::MatrixXd> llt(d.g);
  if (llt.info() != Eigen::Success) return util::operator_norm(h);
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd a = L.transpose() * h * L.transpose().inverse();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()));
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

ContactClass classify(double h_norm, double sasakian_residual, double tol) {
  if (h_norm > tol) return ContactClass::ContactMetric;
  if (sasakian_residual > tol) return ContactClass::KContact;
  return ContactClass::Sasakian;
}

const char* contact_class_name(ContactClass c) {
  switch (c) {
    case ContactClass::ContactMetric: return "contact metric";
    case ContactClass::KContact: return "K-contact";
    case ContactClass::Sasakian: return "Sasakian";
  }
  return "?";
}

namespace {

Eigen::VectorXd project_out(const Eigen::MatrixXd& g, const Eigen::VectorXd& v,
                            const std::vector<Eigen::VectorXd>& basis) {
  Eigen::VectorXd out = v;
  for (const auto& b : basis) out -= (b.dot(g * v)) * b;
  return out;
}

}  // namespace

Eigen::MatrixXd phi_adapted_basis(const Eigen::MatrixXd& g, const Eigen::MatrixXd& phi,
                                  const Eigen::VectorXd& xi) {
  const int dim = static_cast<int>(g.rows());
  const int n = (dim - 1) / 2;
  std::vector<Eigen::VectorXd> xs, phixs;
  std::vector<Eigen::VectorXd> all = {xi};
  for (int seed = 0; seed < dim && static_cast<int>(xs.size()) < n; ++seed) {
    Eigen::VectorXd v = project_out(g, Eigen::VectorXd::Unit(dim, seed), all);
    const double norm2 = v.dot(g * v);
    if (norm2 < 1e-18) continue;
    v /= std::sqrt(norm2);
    const Eigen::VectorXd pv = phi * v;
    // A clean candidate must have phi v unit and orthogonal to everything
    // collected so far; departures mean v leaned into an existing phi-plane.
    bool clean = std::abs(pv.dot(g * pv) - 1.0) < 1e-8;
    for (const auto& b : all)
      if (clean && std::abs(pv.dot(g * b)) > 1e-8) clean = false;
    if (!clean) continue;
    xs.push_back(v);
    phixs.push_back(pv);
    all.push_back(v);
    all.push_back(pv);
  }
  if (static_cast<int>(xs.size()) < n)
    throw NumericError("could not assemble a phi-adapted basis");
  Eigen::MatrixXd B(dim, dim);
  for (int i = 0; i < n; ++i) {
    B.col(i) = xs[i];
    B.col(n + i) = phixs[i];
  }
  B.col(dim - 1) = xi;
  return B;
}

Eigen::MatrixXd phi_adapted_basis(const PointData& d) {
  return phi_adapted_basis(d.g, d.phi, d.xi);
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& g, const Eigen::VectorXd& xi) {
  const int dim = static_cast<int>(g.rows());
  std::vector<Eigen::VectorXd> got = {xi};
  for (int seed = 0; seed < dim && static_cast<int>(got.size()) < dim; ++seed) {
    Eigen::VectorXd v = project_out(g, Eigen::VectorXd::Unit(dim, seed), got);
    const double norm2 = v.dot(g * v);
    if (norm2 < 1e-18) continue;
    got.push_back(v / std::sqrt(norm2));
  }
  if (static_cast<int>(got.size()) != dim)
    throw NumericError("could not complete an orthonormal basis");
  Eigen::MatrixXd B(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) B.col(i) = got[i + 1];
  B.col(dim - 1) = xi;
  return B;
}

Eigen::MatrixXd orthonormal_basis(const PointData& d) {
  return orthonormal_basis(d.g, d.xi);
}

}  // namespace structure
}  // namespace kmnv
