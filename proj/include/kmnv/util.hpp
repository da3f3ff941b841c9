#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kmnv {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: bad manifest schema, inconsistent declarations, invalid arguments.
struct ValidationError : Error {
  using Error::Error;
};

// A numeric operation could not be carried out (singular metric, non-PD metric, ...).
struct NumericError : Error {
  using Error::Error;
};

namespace util {

// Largest absolute entry of a matrix or vector.
inline double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Operator 2-norm (largest singular value); used for residuals reported "in operator norm".
double operator_norm(const Eigen::MatrixXd& m);

// Formats a double so that parsing the result recovers the exact same value.
std::string format_double(double v);

// FNV-1a 64-bit hash, hex-encoded; used for stable manifest content hashes.
std::string fnv1a_hex(std::string_view bytes);

// Runs fn(i) for i in [0, n) on a small pool of worker threads. Each call must
// write only to its own slot of pre-sized output storage; no locking is provided.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace util
}  // namespace kmnv
