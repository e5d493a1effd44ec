#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace subplanck {

using Complex = std::complex<double>;

// Thrown when a computation leaves its validated numerical regime: a result
// that overflows double, a truncation tail that refuses to shrink below
// tolerance, or a realness/normalization residue above its bound.  Batch
// callers map this to exit code 3; std::invalid_argument (bad parameters)
// maps to exit code 2.
class numeric_guard_error : public std::runtime_error {
 public:
  explicit numeric_guard_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace subplanck
