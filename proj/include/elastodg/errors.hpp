#pragma once
// Error types mapped to CLI exit codes: config -> 2, mesh -> 3, divergence -> 4.

#include <stdexcept>
#include <string>

namespace elastodg {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct MeshError : std::runtime_error {
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace elastodg
