#pragma once

#include <stdexcept>

namespace typlab {

/// A requested object would exceed platform or configured limits
/// (sector dimension, packed-word width, dense-matrix memory budget).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested conserved charge admits no configurations.
struct EmptySectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A configuration does not belong to the sector it was used with.
struct MembershipError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace typlab
