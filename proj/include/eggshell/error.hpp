#pragma once

#include <stdexcept>
#include <string>

namespace eggshell {

// Invalid argument: bad shape, out-of-range parameter, nonpositive Gamma argument.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured work cap would be exceeded. Never a silent truncation.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// The bisection bracket does not straddle the target slope.
class BracketError : public std::runtime_error {
 public:
  explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eggshell
