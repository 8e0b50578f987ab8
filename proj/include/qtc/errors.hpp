#pragma once

#include <stdexcept>
#include <string>

namespace qtc {

// File and stream failures: missing files, bad magic bytes, truncation,
// unsupported encodings.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical factorization failures reported by the SVD backend.
class decomposition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtc
