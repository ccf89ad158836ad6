#pragma once

#include <stdexcept>
#include <string>

namespace pdimer {

// Bad arguments or malformed input data.
class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// A checked identity that is guaranteed by the theory failed. Distinct from
// InvalidInputError so harnesses can treat it as falsifying evidence rather
// than as a usage bug.
class TheoremViolationError : public std::runtime_error {
 public:
  explicit TheoremViolationError(const std::string& what) : std::runtime_error(what) {}
};

// A search guard (size bound, enumeration cap) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pdimer
