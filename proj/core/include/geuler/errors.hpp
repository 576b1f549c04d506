#pragma once

#include <stdexcept>
#include <string>

namespace geuler {

/// Work would exceed a configured cap (path enumeration, brute-force search,
/// float-mode time budget). The message states the required amount.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested endpoint map is not defined on the given grid.
class EndpointMapUndefined : public std::invalid_argument {
 public:
  explicit EndpointMapUndefined(const std::string& what) : std::invalid_argument(what) {}
};

/// A plan violates a structural requirement (endpoint condition, marginals).
class InconsistentPlanError : public std::runtime_error {
 public:
  explicit InconsistentPlanError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace geuler
