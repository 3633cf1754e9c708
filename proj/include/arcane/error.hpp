#pragma once

#include <stdexcept>
#include <string>

namespace arcane {

// Arguments that violate an operation's preconditions (bad ranges, unknown ids).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A record or config object failing its own invariants; the message names the field.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arcane
