#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>

namespace typlab {

/// Spin-1/2 bond operator cos(theta)*sigma_z + sin(theta)*sigma_x, applied
/// identically on every site.
struct SpinHalfAngle {
  double theta = 0.0;
};

/// Spin-1 bond operator: a real symmetric 3x3 matrix with zero diagonal,
/// written in the level order m = -1, 0, +1. a12 couples m=-1 <-> m=0,
/// a13 couples m=-1 <-> m=+1, a23 couples m=0 <-> m=+1.
struct SpinOneMatrix {
  double a12 = 0.0;
  double a13 = 0.0;
  double a23 = 0.0;

  friend bool operator==(const SpinOneMatrix&, const SpinOneMatrix&) = default;
};

using InteractionSpec = std::variant<SpinHalfAngle, SpinOneMatrix>;

/// Full description of one chain experiment. The level splitting only sets
/// the free part of the energy, which is constant on a sector and never
/// enters sector computations; it is kept as metadata.
struct ChainSpec {
  int chain_length = 2;
  int local_dimension = 2;
  double level_splitting = 1.0;
  double coupling = 1.0;
  InteractionSpec interaction = SpinHalfAngle{};

  void validate() const {
    if (chain_length < 2) throw std::invalid_argument("chain length must be at least 2");
    if (local_dimension != 2 && local_dimension != 3)
      throw std::invalid_argument("local dimension must be 2 or 3");
    if (!(coupling > 0.0)) throw std::invalid_argument("coupling must be positive");
    bool spin_half = std::holds_alternative<SpinHalfAngle>(interaction);
    if (spin_half != (local_dimension == 2))
      throw std::invalid_argument("interaction kind does not match the local dimension");
  }
};

/// Stable content hash of the parameters that determine a sector block,
/// recorded as report metadata.
std::uint64_t chain_spec_hash(const ChainSpec& spec);

}  // namespace typlab
