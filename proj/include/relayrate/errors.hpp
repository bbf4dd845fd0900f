#pragma once

#include <stdexcept>
#include <string>

namespace relayrate {

/// Bad caller input: malformed tables, unknown axis names, out-of-range
/// parameters. Maps to CLI exit code 1.
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A quantity that is guaranteed by construction came out wrong (identity
/// residual too large, dominance breach, negative information beyond rounding
/// noise). Never clamped or absorbed. Maps to CLI exit code 2.
struct PropertyViolation : std::logic_error {
  explicit PropertyViolation(const std::string& msg) : std::logic_error(msg) {}
};

/// A configured resource cap (codebook size) would be exceeded.
/// Maps to CLI exit code 3.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace relayrate
