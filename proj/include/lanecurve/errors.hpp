#pragma once

#include <stdexcept>

namespace lanecurve {

/// Malformed or inconsistent input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lanecurve
