#pragma once

#include <stdexcept>

namespace afpp {

/// A configured resource cap (cells, net points, iterations) was exhausted
/// before the requested certificate could be produced.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration payload.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace afpp
