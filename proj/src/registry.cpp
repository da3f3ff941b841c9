#include "kmnv/registry.hpp"

#include <cmath>
#include <filesystem>

#include "kmnv/deformation.hpp"

namespace kmnv {
namespace registry {

namespace {

// Parses a dim x dim grid of expression strings against the declared
// coordinate and constant names.
std::vector<std::vector<Expr>> parse_grid(const ManifoldSpec& spec,
                                          const std::vector<std::vector<const char*>>& src) {
  std::vector<std::vector<Expr>> out;
  out.reserve(src.size());
  for (const auto& row : src) {
    std::vector<Expr> r;
    r.reserve(row.size());
    for (const char* cell : row) {
      r.push_back(parse_expr(cell, spec.coordinates, spec.constant_names));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Expr> parse_vector(const ManifoldSpec& spec, const std::vector<const char*>& src) {
  std::vector<Expr> out;
  out.reserve(src.size());
  for (const char* cell : src) {
    out.push_back(parse_expr(cell, spec.coordinates, spec.constant_names));
  }
  return out;
}

// Flat Euclidean space with the translation-invariant almost contact
// structure: phi rotates the i-th transverse plane, xi is the last coordinate
// direction. d eta vanishes identically, so this is *not* a contact structure;
// it exercises the non-contact reporting path and the flat-curvature path.
Entry euclidean(int dim, int grid) {
  ManifoldSpec s;
  s.name = "euclidean-r" + std::to_string(dim);
  s.dimension = dim;
  s.backend = Backend::CoordinateChart;
  s.note = "flat metric, translation-invariant phi/xi; eta is closed, so not contact";
  const int n = (dim - 1) / 2;
  for (int i = 0; i < dim; ++i) s.coordinates.push_back("x" + std::to_string(i + 1));
  std::vector<std::vector<const char*>> gsrc(dim, std::vector<const char*>(dim, "0"));
  std::vector<std::vector<std::string>> phi_text(dim, std::vector<std::string>(dim, "0"));
  for (int i = 0; i < dim; ++i) gsrc[i][i] = "1";
  for (int i = 0; i < n; ++i) {
    phi_text[n + i][i] = "1";
    phi_text[i][n + i] = "-1";
  }
  std::vector<std::vector<const char*>> psrc(dim, std::vector<const char*>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) psrc[i][j] = phi_text[i][j].c_str();
  std::vector<const char*> xsrc(dim, "0");
  xsrc[dim - 1] = "1";
  s.metric = parse_grid(s, gsrc);
  s.phi = parse_grid(s, psrc);
  s.xi = parse_vector(s, xsrc);
  s.domain.min.assign(dim, -1.0);
  s.domain.max.assign(dim, 1.0);
  s.domain.grid = grid;

  Entry e;
  e.name = s.name;
  e.summary = "flat R^" + std::to_string(dim) + " with a non-contact almost contact structure";
  e.spec = std::move(s);
  e.expected.kappa = 0.0;
  e.expected.F = 0.0;
  e.expected.tau = 0.0;
  e.expected.contact = false;
  e.expected.k_contact = false;
  e.expected.sasakian = false;
  e.expected.curvature_flat = true;
  e.expected.conformally_flat = true;
  return e;
}

// The standard Sasakian structure on R^3: coordinates (x, y, z), contact form
// eta = (dz - y dx)/2, xi = 2 d/dz, metric eta (x) eta + (dx^2 + dy^2)/4.
// Constant curvature invariants: kappa = 1, phi-sectional curvature -3.
Entry sasakian_r3() {
  ManifoldSpec s;
  s.name = "sasakian-r3";
  s.dimension = 3;
  s.backend = Backend::CoordinateChart;
  s.fd.step = 1e-3;
  s.note = "standard Sasakian structure on R^3; constant phi-sectional curvature -3";
  s.coordinates = {"x", "y", "z"};
  s.metric = parse_grid(s, {{"1/4 + y^2/4", "0", "-y/4"},
                            {"0", "1/4", "0"},
                            {"-y/4", "0", "1/4"}});
  s.phi = parse_grid(s, {{"0", "1", "0"},
                         {"-1", "0", "0"},
                         {"0", "y", "0"}});
  s.xi = parse_vector(s, {"0", "0", "2"});
  s.domain.min = {-0.8, -0.8, -0.8};
  s.domain.max = {0.8, 0.8, 0.8};
  s.domain.grid = 5;

  Entry e;
  e.name = s.name;
  e.summary = "Sasakian R^3 in Darboux-style coordinates (kappa = 1, F = -3)";
  e.spec = std::move(s);
  e.expected.kappa = 1.0;
  e.expected.lambda = 0.0;
  e.expected.F = -3.0;
  e.expected.tau = -2.0;
  e.expected.contact = true;
  e.expected.k_contact = true;
  e.expected.sasakian = true;
  e.expected.curvature_flat = false;
  e.expected.conformally_flat = false;
  return e;
}

// Five-dimensional Heisenberg group with its left-invariant Sasakian
// structure, declared through a global orthonormal frame:
//   [E1, E3] = 2 E5,  [E2, E4] = 2 E5,  phi E1 = E3,  phi E2 = E4,  xi = E5.
// Constant phi-sectional curvature -3, scalar curvature -4.
Entry heisenberg_frame() {
  ManifoldSpec s;
  s.name = "heisenberg-frame";
  s.dimension = 5;
  s.backend = Backend::OrthonormalFrame;
  s.note = "left-invariant Sasakian structure on the 5-dimensional Heisenberg group";
  s.structure_constants = {{0, 2, 4, 2.0}, {1, 3, 4, 2.0}};
  s.phi_frame = Eigen::MatrixXd::Zero(5, 5);
  s.phi_frame(2, 0) = 1.0;
  s.phi_frame(3, 1) = 1.0;
  s.phi_frame(0, 2) = -1.0;
  s.phi_frame(1, 3) = -1.0;
  s.xi_frame = Eigen::VectorXd::Zero(5);
  s.xi_frame(4) = 1.0;

  Entry e;
  e.name = s.name;
  e.summary = "Heisenberg group H^5 via an invariant frame (Sasakian, F = -3)";
  e.spec = std::move(s);
  e.expected.kappa = 1.0;
  e.expected.lambda = 0.0;
  e.expected.F = -3.0;
  e.expected.tau = -4.0;
  e.expected.contact = true;
  e.expected.k_contact = true;
  e.expected.sasakian = true;
  e.expected.curvature_flat = false;
  e.expected.conformally_flat = false;
  return e;
}

// Three-dimensional unimodular Lie group with left-invariant structure
//   [E1, E2] = 2 E3,  [E2, E3] = 0,  [E3, E1] = E2,  phi E1 = E2,  xi = E3.
// The tensor h has eigenvalues (1/2, -1/2, 0), so kappa = 3/4, mu = 1, nu = 0.
Entry ns_frame() {
  ManifoldSpec s;
  s.name = "ns-lambda05";
  s.dimension = 3;
  s.backend = Backend::OrthonormalFrame;
  s.note = "left-invariant non-Sasakian structure with h-eigenvalue 1/2";
  s.structure_constants = {{0, 1, 2, 2.0}, {0, 2, 1, -1.0}};
  s.phi_frame = Eigen::MatrixXd::Zero(3, 3);
  s.phi_frame(1, 0) = 1.0;
  s.phi_frame(0, 1) = -1.0;
  s.xi_frame = Eigen::VectorXd::Zero(3);
  s.xi_frame(2) = 1.0;

  Entry e;
  e.name = s.name;
  e.summary = "non-Sasakian 3-dimensional Lie group (kappa = 3/4, mu = 1, nu = 0)";
  e.spec = std::move(s);
  e.expected.kappa = 0.75;
  e.expected.mu = 1.0;
  e.expected.nu = 0.0;
  e.expected.lambda = 0.5;
  e.expected.F = -1.75;
  e.expected.tau = -0.5;
  e.expected.contact = true;
  e.expected.k_contact = false;
  e.expected.sasakian = false;
  e.expected.curvature_flat = false;
  e.expected.conformally_flat = false;
  return e;
}

// Coordinate-chart realization of the same Lie group: the frame fields are
// integrated explicitly in coordinates (t, u, w), with E1 = d/dt and the
// other two legs rotating in the (u, w) plane at rate 2r t, r = 1/sqrt(2).
// Every invariant must agree with ns-lambda05 to FD accuracy.
Entry ns_chart() {
  ManifoldSpec s;
  s.name = "ns-chart-lambda05";
  s.dimension = 3;
  s.backend = Backend::CoordinateChart;
  s.fd.step = 1e-3;
  s.note = "coordinate-chart realization of ns-lambda05; invariants must match it";
  s.coordinates = {"t", "u", "w"};
  s.constant_names = {"r"};
  s.constant_values = {0.7071067811865476};
  s.metric = parse_grid(
      s, {{"1", "0", "0"},
          {"0", "1 + sin(2*r*t)^2", "-r*sin(2*r*t)*cos(2*r*t)"},
          {"0", "-r*sin(2*r*t)*cos(2*r*t)", "1 - r^2*sin(2*r*t)^2"}});
  s.phi = parse_grid(s, {{"0", "-cos(2*r*t)", "-r*sin(2*r*t)"},
                         {"cos(2*r*t)", "0", "0"},
                         {"sin(2*r*t)/r", "0", "0"}});
  s.xi = parse_vector(s, {"0", "-r*sin(2*r*t)", "cos(2*r*t)"});
  s.domain.min = {-0.6, -0.6, -0.6};
  s.domain.max = {0.6, 0.6, 0.6};
  s.domain.grid = 5;

  Entry e;
  e.name = s.name;
  e.summary = "chart-backend twin of ns-lambda05 (same invariants, numerical derivatives)";
  e.spec = std::move(s);
  e.expected = ns_frame().expected;
  return e;
}

// Deformed copies of ns-lambda05 under the one-parameter metric change
// g -> a g + a(a-1) eta (x) eta, xi -> xi / a. The a = 1/2 member lands
// exactly on the flat contact structure (kappa-bar = mu-bar = 0).
Entry ns_deformed(const Entry& base, double a) {
  Entry e;
  e.spec = deformation::deform(base.spec, a);
  e.name = e.spec.name;

  const auto pred = deformation::predict(*base.expected.kappa, *base.expected.mu,
                                         *base.expected.nu, *base.expected.F, a);
  e.expected.kappa = pred.kappa;
  e.expected.mu = pred.mu;
  e.expected.nu = pred.nu;
  e.expected.lambda = std::sqrt(std::max(0.0, 1.0 - pred.kappa));
  e.expected.F = pred.F;
  e.expected.contact = true;
  e.expected.sasakian = false;
  e.expected.k_contact = false;
  const bool flat = std::abs(pred.kappa) < 1e-12 && std::abs(pred.mu) < 1e-12 &&
                    std::abs(pred.nu) < 1e-12;
  e.expected.curvature_flat = flat;
  e.expected.conformally_flat = flat;
  e.expected.tau = 2.0 * (pred.kappa - pred.mu);
  e.summary = "ns-lambda05 deformed with a = " + util::format_double(a) +
              (flat ? " (lands on the flat contact structure)" : "");
  return e;
}

std::vector<Entry> build_all() {
  std::vector<Entry> out;
  out.push_back(euclidean(3, 5));
  out.push_back(euclidean(5, 2));
  out.push_back(sasakian_r3());
  out.push_back(heisenberg_frame());
  out.push_back(ns_frame());
  out.push_back(ns_chart());
  const Entry ns = ns_frame();
  out.push_back(ns_deformed(ns, 0.5));
  out.push_back(ns_deformed(ns, 2.0));
  out.push_back(ns_deformed(ns, 3.0));
  return out;
}

}  // namespace

const std::vector<Entry>& all() {
  static const std::vector<Entry> entries = build_all();
  return entries;
}

const Entry* find(const std::string& name) {
  for (const Entry& e : all()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

ManifoldSpec resolve(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) return load_manifest(name_or_path);
  if (const Entry* e = find(name_or_path)) return e->spec;
  throw ValidationError("no such file or registry entry: " + name_or_path);
}

}  // namespace registry
}  // namespace kmnv
