#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmnv/manifold.hpp"

namespace kmnv {
namespace registry {

// Expected properties of a built-in entry. Every asserted value is re-derived
// by the pipeline in the test suite; the registry is a record of what must
// come out, not a source of trusted numbers.
struct Expected {
  std::optional<double> kappa;
  std::optional<double> mu;
  std::optional<double> nu;
  std::optional<double> lambda;
  std::optional<double> F;
  std::optional<double> tau;
  std::optional<bool> contact;
  std::optional<bool> k_contact;
  std::optional<bool> sasakian;
  std::optional<bool> curvature_flat;
  std::optional<bool> conformally_flat;
};

struct Entry {
  std::string name;
  std::string summary;
  ManifoldSpec spec;
  Expected expected;
};

// All built-in entries, constructed once.
const std::vector<Entry>& all();

// Entry by name; nullptr when absent.
const Entry* find(const std::string& name);

// Resolve a CLI argument: an existing file path loads as a manifest, anything
// else must be a registry name. Throws ValidationError when neither works.
ManifoldSpec resolve(const std::string& name_or_path);

}  // namespace registry
}  // namespace kmnv
