#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "kmnv/expr.hpp"
#include "kmnv/numdiff.hpp"
#include "kmnv/util.hpp"

namespace kmnv {

// How a manifold's contact metric data is declared.
//
// CoordinateChart: the metric, phi, and xi are expression-valued fields over a
// coordinate patch; all derivatives are taken numerically with respect to the
// chart coordinates.
//
// OrthonormalFrame: the manifold carries a global frame {E_1..E_dim} that is
// orthonormal for g, with Lie brackets [E_i, E_j] = sum_k c^k_ij E_k given by
// structure constants, and phi / xi given by constant components in that
// frame. The metric is the identity in frame components by construction.
enum class Backend { CoordinateChart, OrthonormalFrame };

// One structure-constant entry c^k_ij for [E_i, E_j]; indices are 0-based
// internally, i < j (antisymmetry fills in the rest).
struct StructureConstant {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

// Axis-aligned sample box for a coordinate chart, with a per-axis grid
// resolution used when a battery of checks wants interior sample points.
struct SampleDomain {
  std::vector<double> min;
  std::vector<double> max;
  int grid = 3;

  // Interior grid points (endpoints excluded so FD stencils stay inside).
  std::vector<Eigen::VectorXd> points() const;
};

// Full declaration of a contact metric manifold, either backend.
struct ManifoldSpec {
  std::string name;
  int dimension = 0;
  Backend backend = Backend::CoordinateChart;
  FdConfig fd;
  std::string note;

  // Coordinate-chart backend.
  std::vector<std::string> coordinates;
  std::vector<std::string> constant_names;
  std::vector<double> constant_values;
  std::vector<std::vector<Expr>> metric;  // dim x dim, symmetric
  std::vector<std::vector<Expr>> phi;     // dim x dim, mixed components
  std::vector<Expr> xi;                   // dim
  SampleDomain domain;

  // Orthonormal-frame backend.
  std::vector<StructureConstant> structure_constants;
  Eigen::MatrixXd phi_frame;  // dim x dim
  Eigen::VectorXd xi_frame;   // dim

  // Throws ValidationError if the declaration is structurally unusable
  // (dimension not odd or < 3, shape mismatches, duplicate names, structure
  // constants out of range or with i >= j).
  void validate() const;

  // [E_i, E_j] components in the frame backend (antisymmetric in i, j).
  Eigen::VectorXd bracket(int i, int j) const;
};

// Everything about the manifold evaluated at one point: the metric, the
// structure tensors, and enough derivative data for curvature. For the frame
// backend "point" is irrelevant for the constant fields, but scalar functions
// are still differentiated along frame directions, with E_i acting as the
// i-th partial derivative.
struct PointData {
  Eigen::VectorXd point;
  Eigen::MatrixXd g;        // metric components
  Eigen::MatrixXd g_inv;    // inverse metric
  Eigen::MatrixXd phi;      // mixed (1,1) components
  Eigen::VectorXd xi;       // vector components
  Eigen::VectorXd eta;      // covector components, eta = g(xi, .)
};

// JSON manifest I/O. Round-trips every field of ManifoldSpec; expression
// fields are stored as their printed form, structure constants as a list of
// {i, j, k, value} objects with 1-based indices in the file.
ManifoldSpec load_manifest(const std::string& path);
ManifoldSpec parse_manifest(const std::string& json_text);
std::string manifest_to_json(const ManifoldSpec& spec);
void save_manifest(const ManifoldSpec& spec, const std::string& path);

// True when the two declarations describe the same manifold up to floating
// formatting: same backend, dimension, names, constants, identical printed
// expressions, and structure data equal to within tol.
bool specs_equivalent(const ManifoldSpec& a, const ManifoldSpec& b, double tol = 1e-12);

}  // namespace kmnv
