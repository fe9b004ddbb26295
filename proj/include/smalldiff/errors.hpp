#pragma once

#include <stdexcept>
#include <string>

namespace smalldiff {

/// Malformed arguments: negative lengths, L < 1, arcs longer than the circle,
/// parts that do not tile the circle.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Arguments outside the domain where a formula or theorem applies.
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Instance exceeds an explicit size guard (state space, enumeration count).
struct capacity_error : std::length_error {
  using std::length_error::length_error;
};

/// Endpoint configuration with coincident endpoints where a derivative is requested.
struct degenerate_configuration : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace smalldiff
