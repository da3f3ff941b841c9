#include "kmnv/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace kmnv {

std::vector<Eigen::VectorXd> SampleDomain::points() const {
  std::vector<Eigen::VectorXd> out;
  const int dim = static_cast<int>(min.size());
  if (dim == 0 || grid <= 0) return out;
  // Interior nodes of a (grid+2)-point uniform subdivision per axis.
  std::vector<int> idx(dim, 0);
  for (;;) {
    Eigen::VectorXd p(dim);
    for (int a = 0; a < dim; ++a) {
      double t = static_cast<double>(idx[a] + 1) / static_cast<double>(grid + 1);
      p[a] = min[a] + t * (max[a] - min[a]);
    }
    out.push_back(p);
    int a = 0;
    while (a < dim && ++idx[a] == grid) idx[a++] = 0;
    if (a == dim) break;
  }
  return out;
}

void ManifoldSpec::validate() const {
  if (name.empty()) throw ValidationError("manifold has no name");
  if (dimension < 3 || dimension % 2 == 0)
    throw ValidationError("dimension must be odd and at least 3, got " +
                          std::to_string(dimension));
  const auto d = static_cast<std::size_t>(dimension);
  if (backend == Backend::CoordinateChart) {
    if (coordinates.size() != d)
      throw ValidationError(name + ": expected " + std::to_string(dimension) +
                            " coordinates, got " + std::to_string(coordinates.size()));
    std::set<std::string> seen;
    for (const auto& c : coordinates)
      if (!seen.insert(c).second)
        throw ValidationError(name + ": duplicate coordinate name '" + c + "'");
    for (const auto& c : constant_names)
      if (!seen.insert(c).second)
        throw ValidationError(name + ": constant '" + c + "' collides with another name");
    if (constant_names.size() != constant_values.size())
      throw ValidationError(name + ": constant names/values length mismatch");
    auto check_square = [&](const std::vector<std::vector<Expr>>& m, const char* what) {
      if (m.size() != d)
        throw ValidationError(name + ": " + what + " must have " +
                              std::to_string(dimension) + " rows");
      for (const auto& row : m)
        if (row.size() != d)
          throw ValidationError(name + ": " + what + " rows must have " +
                                std::to_string(dimension) + " entries");
    };
    check_square(metric, "metric");
    check_square(phi, "phi");
    if (xi.size() != d)
      throw ValidationError(name + ": xi must have " + std::to_string(dimension) +
                            " components");
    if (domain.min.size() != d || domain.max.size() != d)
      throw ValidationError(name + ": sample domain must bound every coordinate");
    for (std::size_t a = 0; a < d; ++a)
      if (!(domain.min[a] < domain.max[a]))
        throw ValidationError(name + ": sample domain is empty on axis " +
                              std::to_string(a));
    // A metric declared by expressions must be symmetric as a function; probe
    // a few interior points so an asymmetric declaration is rejected up front
    // rather than producing nonsense curvature. Probes that leave an
    // expression's domain are skipped — they cannot witness asymmetry.
    for (const double frac : {0.5, 0.37, 0.73}) {
      std::vector<double> probe(d);
      for (std::size_t a = 0; a < d; ++a)
        probe[a] = domain.min[a] + frac * (domain.max[a] - domain.min[a]);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = r + 1; c < d; ++c) {
          try {
            const double grc = metric[r][c].evaluate(probe, constant_values);
            const double gcr = metric[c][r].evaluate(probe, constant_values);
            if (std::abs(grc - gcr) > 1e-9 * std::max(1.0, std::abs(grc)))
              throw ValidationError(name + ": metric is not symmetric: entry (" +
                                    std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                    ") differs from its transpose at a sample point");
          } catch (const DomainError&) {
          }
        }
      }
    }
  } else {
    for (const auto& sc : structure_constants) {
      if (sc.i < 0 || sc.j < 0 || sc.k < 0 || sc.i >= dimension ||
          sc.j >= dimension || sc.k >= dimension)
        throw ValidationError(name + ": structure constant index out of range");
      if (sc.i >= sc.j)
        throw ValidationError(name +
                              ": structure constants must be stored with i < j");
    }
    if (phi_frame.rows() != dimension || phi_frame.cols() != dimension)
      throw ValidationError(name + ": phi_frame must be " + std::to_string(dimension) +
                            "x" + std::to_string(dimension));
    if (xi_frame.size() != dimension)
      throw ValidationError(name + ": xi_frame must have " +
                            std::to_string(dimension) + " components");
  }
}

Eigen::VectorXd ManifoldSpec::bracket(int i, int j) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension);
  if (i == j) return out;
  double sign = 1.0;
  if (i > j) {
    std::swap(i, j);
    sign = -1.0;
  }
  for (const auto& sc : structure_constants)
    if (sc.i == i && sc.j == j) out[sc.k] += sign * sc.value;
  return out;
}

namespace {

using nlohmann::json;

json expr_matrix_to_json(const std::vector<std::vector<Expr>>& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::vector<Expr>> expr_matrix_from_json(
    const json& rows, const std::vector<std::string>& coords,
    const std::vector<std::string>& consts, const char* what) {
  if (!rows.is_array())
    throw ValidationError(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<Expr>> out;
  for (const auto& row : rows) {
    if (!row.is_array())
      throw ValidationError(std::string(what) + " rows must be arrays");
    std::vector<Expr> r;
    for (const auto& cell : row)
      r.push_back(parse_expr(cell.get<std::string>(), coords, consts));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

namespace {

ManifoldSpec spec_from_json(const json& j) {
  ManifoldSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.dimension = j.at("dimension").get<int>();
  const std::string backend = j.at("backend").get<std::string>();
  if (backend == "coordinate-chart")
    spec.backend = Backend::CoordinateChart;
  else if (backend == "orthonormal-frame")
    spec.backend = Backend::OrthonormalFrame;
  else
    throw ValidationError("unknown backend '" + backend + "'");
  if (j.contains("fd_step")) spec.fd.step = j["fd_step"].get<double>();
  if (j.contains("richardson")) spec.fd.richardson = j["richardson"].get<bool>();
  if (j.contains("note")) spec.note = j["note"].get<std::string>();

  if (spec.backend == Backend::CoordinateChart) {
    spec.coordinates = j.at("coordinates").get<std::vector<std::string>>();
    if (j.contains("constants")) {
      for (const auto& [key, value] : j["constants"].items()) {
        spec.constant_names.push_back(key);
        spec.constant_values.push_back(value.get<double>());
      }
    }
    spec.metric = expr_matrix_from_json(j.at("metric"), spec.coordinates,
                                        spec.constant_names, "metric");
    spec.phi = expr_matrix_from_json(j.at("phi"), spec.coordinates,
                                     spec.constant_names, "phi");
    for (const auto& cell : j.at("xi"))
      spec.xi.push_back(parse_expr(cell.get<std::string>(), spec.coordinates,
                                   spec.constant_names));
    const auto& dom = j.at("domain");
    spec.domain.min = dom.at("min").get<std::vector<double>>();
    spec.domain.max = dom.at("max").get<std::vector<double>>();
    if (dom.contains("grid")) spec.domain.grid = dom["grid"].get<int>();
  } else {
    for (const auto& sc : j.at("structure_constants")) {
      StructureConstant s;
      s.i = sc.at("i").get<int>() - 1;  // manifests are 1-based
      s.j = sc.at("j").get<int>() - 1;
      s.k = sc.at("k").get<int>() - 1;
      s.value = sc.at("value").get<double>();
      spec.structure_constants.push_back(s);
    }
    const auto& pf = j.at("phi_frame");
    spec.phi_frame = Eigen::MatrixXd::Zero(spec.dimension, spec.dimension);
    for (int r = 0; r < spec.dimension; ++r)
      for (int c = 0; c < spec.dimension; ++c)
        spec.phi_frame(r, c) = pf.at(r).at(c).get<double>();
    spec.xi_frame = Eigen::VectorXd::Zero(spec.dimension);
    const auto& xf = j.at("xi_frame");
    for (int r = 0; r < spec.dimension; ++r) spec.xi_frame[r] = xf.at(r).get<double>();
  }
  return spec;
}

}  // namespace

ManifoldSpec parse_manifest(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("manifest is not valid JSON: ") + e.what());
  }
  ManifoldSpec spec;
  try {
    spec = spec_from_json(j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("manifest schema error: ") + e.what());
  }
  spec.validate();
  return spec;
}

ManifoldSpec load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

std::string manifest_to_json(const ManifoldSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["dimension"] = spec.dimension;
  j["backend"] = spec.backend == Backend::CoordinateChart ? "coordinate-chart"
                                                          : "orthonormal-frame";
  j["fd_step"] = spec.fd.step;
  j["richardson"] = spec.fd.richardson;
  if (!spec.note.empty()) j["note"] = spec.note;
  if (spec.backend == Backend::CoordinateChart) {
    j["coordinates"] = spec.coordinates;
    if (!spec.constant_names.empty()) {
      json consts = json::object();
      for (std::size_t i = 0; i < spec.constant_names.size(); ++i)
        consts[spec.constant_names[i]] = spec.constant_values[i];
      j["constants"] = std::move(consts);
    }
    j["metric"] = expr_matrix_to_json(spec.metric);
    j["phi"] = expr_matrix_to_json(spec.phi);
    json xi = json::array();
    for (const auto& e : spec.xi) xi.push_back(e.to_string());
    j["xi"] = std::move(xi);
    j["domain"] = {{"min", spec.domain.min},
                   {"max", spec.domain.max},
                   {"grid", spec.domain.grid}};
  } else {
    json scs = json::array();
    for (const auto& sc : spec.structure_constants)
      scs.push_back({{"i", sc.i + 1},
                     {"j", sc.j + 1},
                     {"k", sc.k + 1},
                     {"value", sc.value}});
    j["structure_constants"] = std::move(scs);
    json pf = json::array();
    for (int r = 0; r < spec.dimension; ++r) {
      json row = json::array();
      for (int c = 0; c < spec.dimension; ++c) row.push_back(spec.phi_frame(r, c));
      pf.push_back(std::move(row));
    }
    j["phi_frame"] = std::move(pf);
    json xf = json::array();
    for (int r = 0; r < spec.dimension; ++r) xf.push_back(spec.xi_frame[r]);
    j["xi_frame"] = std::move(xf);
  }
  return j.dump(2) + "\n";
}

void save_manifest(const ManifoldSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest '" + path + "'");
  out << manifest_to_json(spec);
}

bool specs_equivalent(const ManifoldSpec& a, const ManifoldSpec& b, double tol) {
  // Names and notes are labels, not geometry; two declarations with the same
  // fields describe the same manifold.
  if (a.backend != b.backend || a.dimension != b.dimension) return false;
  auto close = [tol](double x, double y) { return std::abs(x - y) <= tol; };
  if (a.backend == Backend::CoordinateChart) {
    if (a.coordinates != b.coordinates || a.constant_names != b.constant_names)
      return false;
    for (std::size_t i = 0; i < a.constant_values.size(); ++i)
      if (!close(a.constant_values[i], b.constant_values[i])) return false;
    auto same_matrix = [](const std::vector<std::vector<Expr>>& x,
                          const std::vector<std::vector<Expr>>& y) {
      for (std::size_t r = 0; r < x.size(); ++r)
        for (std::size_t c = 0; c < x[r].size(); ++c)
          if (x[r][c].to_string() != y[r][c].to_string()) return false;
      return true;
    };
    if (!same_matrix(a.metric, b.metric) || !same_matrix(a.phi, b.phi)) return false;
    for (std::size_t i = 0; i < a.xi.size(); ++i)
      if (a.xi[i].to_string() != b.xi[i].to_string()) return false;
    return true;
  }
  // Frame backend: compare the full bracket tensor rather than entry lists so
  // that different orderings of the same constants compare equal.
  for (int i = 0; i < a.dimension; ++i)
    for (int j = i + 1; j < a.dimension; ++j)
      if ((a.bracket(i, j) - b.bracket(i, j)).cwiseAbs().maxCoeff() > tol)
        return false;
  if ((a.phi_frame - b.phi_frame).cwiseAbs().maxCoeff() > tol) return false;
  if ((a.xi_frame - b.xi_frame).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

}  // namespace kmnv
