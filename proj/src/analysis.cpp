#include "kmnv/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "kmnv/pointmodel.hpp"
#include "kmnv/structure.hpp"
#include "kmnv/util.hpp"

namespace kmnv {
namespace analysis {

namespace {

// Residuals accumulated pointwise, merged by max.
struct PointResiduals {
  double axioms = 0.0;
  double contact = 0.0;
  double h_identities = 0.0;
  double nabla_xi = 0.0;      // nabla_X xi = -phi X - phi h X
  double sasakian = 0.0;      // (nabla_X phi) Y = g(X, Y) xi - eta(Y) X
  double h_norm = 0.0;
  double max_r = 0.0;         // largest curvature component
  double pair_symmetry = 0.0;
  double bianchi = 0.0;
  double last_skew = 0.0;
  double trace_free = 0.0;    // Weyl contractions
  double weyl = 0.0;          // max Weyl component
  double dim3_identities = 0.0;
  double extract_residual = 0.0;
  double lambda_link = 0.0;   // |h_norm - sqrt(1 - kappa)|
  double theorem = 0.0;
  double corollary = 0.0;
  double prop_F = 0.0;        // |F - (tau/2 - 2 kappa)|
  double ricci_form = 0.0;
  double via_ricci = 0.0;
};

void merge_max(PointResiduals& into, const PointResiduals& from) {
  auto m = [](double& a, double b) { a = std::max(a, b); };
  m(into.axioms, from.axioms);
  m(into.contact, from.contact);
  m(into.h_identities, from.h_identities);
  m(into.nabla_xi, from.nabla_xi);
  m(into.sasakian, from.sasakian);
  m(into.h_norm, from.h_norm);
  m(into.max_r, from.max_r);
  m(into.pair_symmetry, from.pair_symmetry);
  m(into.bianchi, from.bianchi);
  m(into.last_skew, from.last_skew);
  m(into.trace_free, from.trace_free);
  m(into.weyl, from.weyl);
  m(into.dim3_identities, from.dim3_identities);
  m(into.extract_residual, from.extract_residual);
  m(into.lambda_link, from.lambda_link);
  m(into.theorem, from.theorem);
  m(into.corollary, from.corollary);
  m(into.prop_F, from.prop_F);
  m(into.ricci_form, from.ricci_form);
  m(into.via_ricci, from.via_ricci);
}

double curvature_symmetry(const Curvature& c, PointResiduals& r) {
  const int n = c.dim();
  const Eigen::MatrixXd& g = c.point().g;
  double max_r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      max_r = std::max(max_r, util::max_abs(c.riemann(i, j)));
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd rijk = c.riemann(i, j).col(k);
        // First Bianchi: R(ei,ej)ek + R(ej,ek)ei + R(ek,ei)ej = 0.
        Eigen::VectorXd cyc = rijk;
        cyc += c.r(Eigen::VectorXd::Unit(n, j), Eigen::VectorXd::Unit(n, k),
                   Eigen::VectorXd::Unit(n, i));
        cyc += c.r(Eigen::VectorXd::Unit(n, k), Eigen::VectorXd::Unit(n, i),
                   Eigen::VectorXd::Unit(n, j));
        r.bianchi = std::max(r.bianchi, cyc.cwiseAbs().maxCoeff());
        for (int l = 0; l < n; ++l) {
          const double low = (g * rijk)[l];  // R_ijkl
          const double pair = (g * c.riemann(k, l).col(i))[j];
          r.pair_symmetry = std::max(r.pair_symmetry, std::abs(low - pair));
          const double skew = (g * c.riemann(i, j).col(l))[k];
          r.last_skew = std::max(r.last_skew, std::abs(low + skew));
        }
      }
    }
  return max_r;
}

void weyl_battery(const Curvature& c, PointResiduals& r) {
  const int n = c.dim();
  const Eigen::MatrixXd B = structure::orthonormal_basis(c.point());
  const Eigen::MatrixXd L = conformal::schouten(c);
  // Lowered Weyl components over the orthonormal basis; contractions over any
  // slot pair must vanish.
  std::vector<double> w(static_cast<std::size_t>(n * n * n * n));
  auto idx = [n](int i, int j, int k, int l) {
    return static_cast<std::size_t>(((i * n + j) * n + k) * n + l);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Eigen::VectorXd wijk;
        if (i == j)
          wijk = Eigen::VectorXd::Zero(n);
        else
          wijk = conformal::weyl(c, B.col(i), B.col(j), B.col(k));
        for (int l = 0; l < n; ++l) {
          const double comp = wijk.dot(c.point().g * B.col(l));
          w[idx(i, j, k, l)] = comp;
          r.weyl = std::max(r.weyl, std::abs(comp));
        }
      }
  auto contract = [&](auto fix) {
    double worst = 0.0;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        double s = 0.0;
        for (int a = 0; a < n; ++a) s += w[fix(a, x, y)];
        worst = std::max(worst, std::abs(s));
      }
    return worst;
  };
  r.trace_free = std::max(
      {contract([&](int a, int x, int y) { return idx(a, a, x, y); }),
       contract([&](int a, int x, int y) { return idx(a, x, a, y); }),
       contract([&](int a, int x, int y) { return idx(a, x, y, a); }),
       contract([&](int a, int x, int y) { return idx(x, a, a, y); }),
       contract([&](int a, int x, int y) { return idx(x, a, y, a); }),
       contract([&](int a, int x, int y) { return idx(x, y, a, a); })});
}

void dim3_identity_battery(const StructureTensors& m, PointResiduals& r) {
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd X = Eigen::VectorXd::Unit(n, i);
        const Eigen::VectorXd Y = Eigen::VectorXd::Unit(n, j);
        const Eigen::VectorXd Z = Eigen::VectorXd::Unit(n, k);
        auto bt = [&](int w) { return basis_tensor(m, w, X, Y, Z); };
        const double r2 = (bt(2) - 3.0 * (bt(1) + bt(3))).cwiseAbs().maxCoeff();
        const double r5 = bt(5).cwiseAbs().maxCoeff();
        const double r6 = (bt(6) + bt(4)).cwiseAbs().maxCoeff();
        const double r8 = (bt(8) + bt(7)).cwiseAbs().maxCoeff();
        r.dim3_identities = std::max({r.dim3_identities, r2, r5, r6, r8});
      }
}

}  // namespace

Report verify(const ManifoldSpec& base_spec, const VerifyOptions& opt) {
  ManifoldSpec spec = base_spec;
  if (opt.grid) spec.domain.grid = *opt.grid;
  if (opt.fd_step) spec.fd.step = *opt.fd_step;
  Geometry geo(spec);

  Report rep;
  rep.manifold = spec.name;
  rep.dimension = spec.dimension;
  rep.backend =
      spec.backend == Backend::CoordinateChart ? "coordinate-chart" : "orthonormal-frame";
  rep.grid = spec.domain.grid;
  rep.fd = spec.fd;

  const std::vector<Eigen::VectorXd> pts = geo.sample_points();
  rep.points = static_cast<int>(pts.size());
  if (pts.empty()) throw ValidationError(spec.name + ": no sample points");

  PointResiduals worst;
  kmn::Extraction extraction_first;
  double F_first = 0.0, tau_first = 0.0;
  bool first = true;

  for (const auto& p : pts) {
    PointResiduals r;
    Curvature c(geo, p);
    const PointData& d = c.point();

    for (const auto& a : structure::axiom_residuals(d))
      r.axioms = std::max(r.axioms, a.residual);
    r.contact = structure::contact_residual(geo, p);
    for (const auto& a : structure::h_residuals(d, c.h()))
      r.h_identities = std::max(r.h_identities, a.residual);
    r.h_norm = structure::h_spread(d, c.h());

    // nabla_X xi = -phi X - phi h X along every basis direction.
    VectorField xi_field = [&geo](const Eigen::VectorXd& q) { return geo.xi_at(q); };
    const Eigen::MatrixXd phih = d.phi * c.h();
    for (int i = 0; i < c.dim(); ++i) {
      const Eigen::VectorXd lhs = c.covariant_vector_field(xi_field, i);
      const Eigen::VectorXd rhs = -d.phi.col(i) - phih.col(i);
      r.nabla_xi = std::max(r.nabla_xi, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    // (nabla_X phi) Y = g(X, Y) xi - eta(Y) X.
    MatrixField phi_field = [&geo](const Eigen::VectorXd& q) { return geo.phi_at(q); };
    for (int i = 0; i < c.dim(); ++i) {
      const Eigen::MatrixXd lhs = c.covariant_operator_field(phi_field, i);
      const Eigen::MatrixXd rhs =
          d.xi * d.g.row(i) -
          Eigen::VectorXd::Unit(c.dim(), i) * d.eta.transpose();
      r.sasakian = std::max(r.sasakian, util::max_abs(lhs - rhs));
    }

    r.max_r = curvature_symmetry(c, r);
    weyl_battery(c, r);

    const kmn::Extraction ex = kmn::extract(c);
    r.extract_residual = ex.residual;
    if (ex.kappa <= 1.0)
      r.lambda_link = std::abs(r.h_norm - std::sqrt(1.0 - ex.kappa));
    else
      r.lambda_link = r.h_norm;  // kappa > 1 is itself a violation

    const double F = kmn::phi_sectional_invariant(c);
    if (spec.dimension == 3) {
      dim3_identity_battery(StructureTensors::from_point(d, c.h()), r);
      r.theorem = kmn::dim3_theorem_residual(c, ex);
      r.corollary = kmn::dim3_corollary_residual(c, ex, F);
      r.prop_F = std::abs(F - (c.scalar() / 2.0 - 2.0 * ex.kappa));
      r.ricci_form = kmn::dim3_ricci_residual(c, ex);
      r.via_ricci = kmn::dim3_via_ricci_residual(c);
    }

    if (first) {
      extraction_first = ex;
      F_first = F;
      tau_first = c.scalar();
      first = false;
    }
    merge_max(worst, r);
  }

  Invariants& inv = rep.inv;
  inv.extraction = extraction_first;
  inv.extraction.residual = worst.extract_residual;
  inv.F = F_first;
  inv.tau = tau_first;
  inv.max_curvature = worst.max_r;
  inv.contact_residual = worst.contact;
  inv.contact = worst.contact < opt.tol_structure;
  inv.k_contact = inv.contact && worst.h_norm < opt.tol_structure;
  inv.sasakian_residual = worst.sasakian;
  inv.sasakian = inv.contact && worst.sasakian < opt.tol_structure;
  inv.curvature_flat = worst.max_r < opt.tol_flat;

  // Conformal flatness on a small subset: the dim-3 Codazzi evaluation nests
  // three derivative levels, so it is by far the most expensive check.
  {
    std::vector<Eigen::VectorXd> sub;
    for (std::size_t i = 0; i < pts.size() &&
                            static_cast<int>(sub.size()) < opt.max_conformal_points;
         i += std::max<std::size_t>(1, pts.size() / 3))
      sub.push_back(pts[i]);
    const conformal::FlatnessVerdict v =
        conformal::conformal_flatness(geo, sub, opt.tol_flat);
    inv.conformally_flat = v.flat;
    inv.conformal_residual = v.residual;
    inv.conformal_criterion = v.criterion;
  }

  auto add = [&rep](const std::string& section, const std::string& name,
                    const std::string& identity, double residual, double tol,
                    bool applicable, const std::string& why_skipped) {
    Check c;
    c.section = section;
    c.name = name;
    c.identity = identity;
    c.residual = residual;
    c.tolerance = tol;
    if (!applicable) {
      c.status = CheckStatus::Skipped;
      c.skip_reason = why_skipped;
    } else {
      c.status = residual <= tol ? CheckStatus::Pass : CheckStatus::Fail;
    }
    rep.checks.push_back(std::move(c));
  };

  const bool contact = inv.contact;
  const std::string not_contact =
      "structure is not contact (d eta != Phi); identity requires a contact "
      "metric structure";
  const std::string not_dim3 = "identity specific to dimension 3";

  add("structure", "axioms",
      "eta(xi) = 1; phi xi = 0; eta o phi = 0; phi^2 = -I + xi (x) eta; "
      "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y); Phi antisymmetric",
      worst.axioms, opt.tol_structure, true, "");
  add("structure", "contact", "d eta(X, Y) = g(X, phi Y)", worst.contact,
      opt.tol_structure, contact, not_contact);
  add("structure", "h-identities",
      "h xi = 0; tr h = 0; eta o h = 0; h phi + phi h = 0; g h symmetric",
      worst.h_identities, opt.tol_structure, contact, not_contact);
  add("structure", "xi-derivative", "nabla_X xi = -phi X - phi h X",
      worst.nabla_xi, opt.tol_structure, contact, not_contact);
  add("structure", "sasakian-iff-kappa-1",
      "kappa = 1 exactly when (nabla_X phi) Y = g(X, Y) xi - eta(Y) X",
      std::abs((inv.sasakian ? 1.0 : 0.0) -
               (std::abs(extraction_first.kappa - 1.0) < 1e-4 ? 1.0 : 0.0)),
      0.5, contact, not_contact);

  add("curvature", "pair-symmetry", "g(R(X,Y)Z, W) = g(R(Z,W)X, Y)",
      worst.pair_symmetry, opt.tol_curvature, true, "");
  add("curvature", "first-bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0",
      worst.bianchi, opt.tol_curvature, true, "");
  add("curvature", "last-pair-skew", "g(R(X,Y)Z, W) = -g(R(X,Y)W, Z)",
      worst.last_skew, opt.tol_curvature, true, "");

  add("kmn", "xi-curvature-ansatz",
      "R(X,Y)xi = kappa(eta(Y)X - eta(X)Y) + mu(eta(Y)hX - eta(X)hY) + "
      "nu(eta(Y)phi hX - eta(X)phi hY)",
      worst.extract_residual, opt.tol_extract, contact, not_contact);
  add("kmn", "lambda-kappa-link", "lambda = sqrt(1 - kappa)", worst.lambda_link,
      opt.tol_extract, contact, not_contact);

  const bool d3 = spec.dimension == 3;
  add("decomposition", "dim3-basis-identities",
      "R2 = 3(R1 + R3); R5 = 0; R6 = -R4; R8 = -R7", worst.dim3_identities,
      1e-10, d3, not_dim3);
  add("decomposition", "dim3-theorem",
      "R = (tau/2 - 2 kappa) R1 + (tau/2 - 3 kappa) R3 + mu R4 + nu R7",
      worst.theorem, opt.tol_curvature, d3 && contact,
      d3 ? not_contact : not_dim3);
  add("decomposition", "dim3-corollary",
      "R = F R1 + (F - kappa) R3 + mu R4 + nu R7", worst.corollary,
      opt.tol_curvature, d3 && contact, d3 ? not_contact : not_dim3);
  add("decomposition", "phi-sectional-link", "F = tau/2 - 2 kappa", worst.prop_F,
      opt.tol_curvature, d3 && contact, d3 ? not_contact : not_dim3);
  add("decomposition", "dim3-ricci-form",
      "Q = (tau/2 - kappa) I + (3 kappa - tau/2) eta (x) xi + mu h + nu phi h",
      worst.ricci_form, opt.tol_curvature, d3 && contact,
      d3 ? not_contact : not_dim3);
  add("decomposition", "dim3-curvature-via-ricci",
      "R(X,Y)Z = g(Y,Z)QX - g(X,Z)QY + g(QY,Z)X - g(QX,Z)Y - "
      "(tau/2)(g(Y,Z)X - g(X,Z)Y)",
      worst.via_ricci, opt.tol_curvature, d3, not_dim3);

  add("conformal", "weyl-trace-free",
      "every metric contraction of the Weyl tensor vanishes", worst.trace_free,
      opt.tol_trace_free, true, "");
  add("conformal", "dim3-weyl-vanishes", "W = 0 identically in dimension 3",
      worst.weyl, opt.tol_flat, d3, not_dim3);

  for (const auto& c : rep.checks) {
    if (c.status == CheckStatus::Pass) ++rep.passed;
    if (c.status == CheckStatus::Fail) ++rep.failed;
    if (c.status == CheckStatus::Skipped) ++rep.skipped;
  }
  rep.all_pass = rep.failed == 0;
  return rep;
}

std::vector<ExtractionRow> extraction_table(const ManifoldSpec& base_spec,
                                            const VerifyOptions& opt) {
  ManifoldSpec spec = base_spec;
  if (opt.grid) spec.domain.grid = *opt.grid;
  if (opt.fd_step) spec.fd.step = *opt.fd_step;
  Geometry geo(spec);
  std::vector<ExtractionRow> rows;
  for (const auto& p : geo.sample_points()) {
    Curvature c(geo, p);
    rows.push_back({p, kmn::extract(c)});
  }
  return rows;
}

}  // namespace analysis
}  // namespace kmnv
