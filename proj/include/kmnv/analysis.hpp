#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmnv/conformal.hpp"
#include "kmnv/curvature.hpp"
#include "kmnv/kmn.hpp"
#include "kmnv/manifold.hpp"

namespace kmnv {
namespace analysis {

enum class CheckStatus { Pass, Fail, Skipped };

// One verified identity. `identity` holds the mathematical statement being
// checked, so every number in a report traces to a formula.
struct Check {
  std::string section;
  std::string name;
  std::string identity;
  double residual = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Skipped;
  std::string skip_reason;
};

struct Invariants {
  kmn::Extraction extraction;  // kappa, mu, nu, residual, h data
  double F = 0.0;              // phi-sectional at the canonical section
  double tau = 0.0;
  double max_curvature = 0.0;  // max-abs Riemann component over the battery
  bool contact = false;
  double contact_residual = 0.0;
  bool k_contact = false;
  bool sasakian = false;
  double sasakian_residual = 0.0;
  bool curvature_flat = false;
  bool conformally_flat = false;
  double conformal_residual = 0.0;
  std::string conformal_criterion;
};

struct VerifyOptions {
  double tol_structure = 1e-6;
  double tol_curvature = 1e-6;
  double tol_extract = 1e-5;
  double tol_flat = 1e-6;
  double tol_trace_free = 1e-8;
  int max_conformal_points = 3;  // Codazzi evaluations are third-derivative FD
  std::optional<int> grid;
  std::optional<double> fd_step;
};

struct Report {
  std::string manifold;
  int dimension = 0;
  std::string backend;
  int points = 0;
  int grid = 0;
  FdConfig fd;
  Invariants inv;
  std::vector<Check> checks;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  bool all_pass = false;
};

// Runs the full identity battery over the manifold's sample grid.
Report verify(const ManifoldSpec& spec, const VerifyOptions& opt = {});

// Extraction table: (kappa, mu, nu, residual) per sample point.
struct ExtractionRow {
  Eigen::VectorXd point;
  kmn::Extraction extraction;
};
std::vector<ExtractionRow> extraction_table(const ManifoldSpec& spec,
                                            const VerifyOptions& opt = {});

}  // namespace analysis
}  // namespace kmnv
