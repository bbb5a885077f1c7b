#pragma once

#include <stdexcept>
#include <string>

namespace epicount {

// Invalid user input: malformed files, inconsistent dimensions, bad specs.
// The CLI maps this to exit code 1.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-convergence, singular information, overflow.
// The CLI maps this to exit code 2.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace epicount
