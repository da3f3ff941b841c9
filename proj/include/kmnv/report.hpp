#pragma once

#include <string>

#include "kmnv/analysis.hpp"

namespace kmnv {
namespace report {

inline constexpr const char* kToolName = "kmnv";
inline constexpr const char* kToolVersion = "1.0.0";

// JSON rendering of a verification report. Deterministic apart from the
// generated_at timestamp: content_hash is computed over the document with the
// timestamp and the hash field itself excluded, so two runs over identical
// input produce identical hashes.
std::string to_json(const analysis::Report& r);

// Human-readable rendering for terminal output: invariants block, one line
// per check with its formula, and a pass/fail summary.
std::string to_text(const analysis::Report& r);

}  // namespace report
}  // namespace kmnv
