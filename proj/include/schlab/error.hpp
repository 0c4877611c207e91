#pragma once

#include <stdexcept>
#include <string>

namespace schlab {

// Malformed arguments, violated preconditions, unreadable files.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative kernel failed to converge within its cap.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

}  // namespace schlab
