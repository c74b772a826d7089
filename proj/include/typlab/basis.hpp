#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace typlab {

/// Magnetization of a local level: 0,1 for spin-1/2 (so the sector charge is
/// the number of up spins), -1,0,+1 for spin-1 (levels 0,1,2).
constexpr int level_charge(int local_dimension, int level) noexcept {
  return local_dimension == 2 ? level : level - 1;
}

/// One product-basis configuration, packed into a word with site 0 as the
/// most significant base-d digit. Ascending word order is therefore exactly
/// lexicographic order on the level sequence, and for a chain the word
/// doubles as the configuration's index in the full d^N product basis.
struct Configuration {
  std::uint64_t word = 0;
  int chain_length = 0;
  int local_dimension = 2;

  int level(int site) const;
  int charge() const;
  std::string to_string() const;

  static Configuration from_levels(std::span<const int> levels, int local_dimension);

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// The configurations of an open chain with a fixed conserved charge, in
/// strict lexicographic order. Spin-1/2 ranking goes through the
/// combinatorial number system; spin-1 ranking through precomputed
/// suffix-count tables (no closed form exists for trinomial sectors).
/// Immutable after construction; all accessors are reentrant.
class SectorBasis {
 public:
  /// Sectors with more than 2^31 configurations, or whose packed words do
  /// not fit 64 bits, are rejected with CapacityError. An unachievable
  /// charge raises EmptySectorError.
  static SectorBasis enumerate(int chain_length, int local_dimension, int charge);

  int chain_length() const noexcept { return n_; }
  int local_dimension() const noexcept { return d_; }
  int charge() const noexcept { return charge_; }
  std::int64_t dimension() const noexcept { return static_cast<std::int64_t>(words_.size()); }

  /// The index-th configuration in lexicographic order.
  Configuration configuration(std::int64_t index) const;
  std::uint64_t word(std::int64_t index) const;

  /// Lexicographic index of a member configuration; inverse of
  /// configuration(). Throws MembershipError if the word has the wrong
  /// charge or shape.
  std::int64_t rank(std::uint64_t word) const;
  std::int64_t rank(const Configuration& config) const;

  /// Level held by `site` in the index-th configuration (cached decode).
  int site_level(std::int64_t index, int site) const;
  /// All N site levels of the index-th configuration.
  std::span<const std::uint8_t> level_row(std::int64_t index) const;

  /// counts[m] = number of sector configurations whose `site` holds level m.
  /// Sums to dimension() and is independent of the site.
  std::vector<std::int64_t> site_level_counts(int site) const;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  /// Positional weight d^(N-1-site) of a site within the packed word.
  std::uint64_t site_weight(int site) const { return pow_[static_cast<std::size_t>(site)]; }

 private:
  SectorBasis() = default;

  std::int64_t binom(int n, int k) const;
  std::int64_t suffix_count(int site, int remaining_charge) const;

  int n_ = 0;
  int d_ = 2;
  int charge_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint8_t> levels_;  // dimension() x N, row i = levels of configuration i
  std::vector<std::uint64_t> pow_;    // pow_[site] = d^(N-1-site)
  std::vector<std::int64_t> binom_;   // (N+1)^2 Pascal table (spin-1/2 ranking)
  std::vector<std::int64_t> ways_;    // (N+1) x (2N+1) suffix counts (spin-1 ranking)
};

/// Sector dimension without enumerating the sector. Saturates to the same
/// capacity checks as SectorBasis::enumerate.
std::int64_t sector_dimension(int chain_length, int local_dimension, int charge);

}  // namespace typlab
