#pragma once

#include <stdexcept>

namespace gpelab {

// Bad parameters, configs or violated preconditions. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaNs, norm drift, non-convergence and similar runtime failures.
// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gpelab
