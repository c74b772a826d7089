#include "typlab/basis.hpp"

#include <bit>
#include <cassert>
#include <limits>
#include <stdexcept>

#include "typlab/errors.hpp"

namespace typlab {

namespace {

constexpr std::int64_t kCountCap = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMaxDimension = std::int64_t{1} << 31;

std::int64_t add_saturating(std::int64_t a, std::int64_t b) {
  return (a > kCountCap - b) ? kCountCap : a + b;
}

void check_shape(int chain_length, int local_dimension) {
  if (local_dimension != 2 && local_dimension != 3)
    throw std::invalid_argument("local dimension must be 2 or 3");
  if (chain_length < 1) throw std::invalid_argument("chain length must be at least 1");
  // Packed words carry one base-d digit per site.
  if (local_dimension == 2 && chain_length > 63)
    throw CapacityError("spin-1/2 chains longer than 63 sites do not fit a packed word");
  if (local_dimension == 3 && chain_length > 40)
    throw CapacityError("spin-1 chains longer than 40 sites do not fit a packed word");
}

void check_charge(int chain_length, int local_dimension, int charge) {
  bool achievable = local_dimension == 2 ? (charge >= 0 && charge <= chain_length)
                                         : (charge >= -chain_length && charge <= chain_length);
  if (!achievable)
    throw EmptySectorError("no configuration of " + std::to_string(chain_length) +
                           " sites carries charge " + std::to_string(charge));
}

std::vector<std::int64_t> pascal_table(int n) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (int i = 0; i <= n; ++i) {
    t[static_cast<std::size_t>(i) * (n + 1)] = 1;
    for (int j = 1; j <= i; ++j) {
      auto up = static_cast<std::size_t>(i - 1) * (n + 1);
      t[static_cast<std::size_t>(i) * (n + 1) + j] =
          add_saturating(t[up + j - 1], j <= i - 1 ? t[up + j] : 0);
    }
  }
  return t;
}

// ways[site][rem+N] = number of fillings of sites site..N-1 with total
// magnetization rem, for the spin-1 level set {-1,0,+1}.
std::vector<std::int64_t> suffix_table(int n) {
  const int width = 2 * n + 1;
  std::vector<std::int64_t> t(static_cast<std::size_t>(n + 1) * width, 0);
  t[static_cast<std::size_t>(n) * width + n] = 1;  // rem == 0 at the end
  for (int site = n - 1; site >= 0; --site) {
    for (int rem = -n; rem <= n; ++rem) {
      std::int64_t total = 0;
      for (int m = -1; m <= 1; ++m) {
        int r = rem - m;
        if (r < -n || r > n) continue;
        total = add_saturating(total, t[static_cast<std::size_t>(site + 1) * width + r + n]);
      }
      t[static_cast<std::size_t>(site) * width + rem + n] = total;
    }
  }
  return t;
}

}  // namespace

int Configuration::level(int site) const {
  if (site < 0 || site >= chain_length) throw std::out_of_range("site out of range");
  std::uint64_t w = word;
  for (int s = chain_length - 1; s > site; --s) w /= static_cast<unsigned>(local_dimension);
  return static_cast<int>(w % static_cast<unsigned>(local_dimension));
}

int Configuration::charge() const {
  int total = 0;
  std::uint64_t w = word;
  for (int s = 0; s < chain_length; ++s) {
    total += level_charge(local_dimension, static_cast<int>(w % static_cast<unsigned>(local_dimension)));
    w /= static_cast<unsigned>(local_dimension);
  }
  return total;
}

std::string Configuration::to_string() const {
  std::string out(static_cast<std::size_t>(chain_length), '0');
  std::uint64_t w = word;
  for (int s = chain_length - 1; s >= 0; --s) {
    out[static_cast<std::size_t>(s)] =
        static_cast<char>('0' + w % static_cast<unsigned>(local_dimension));
    w /= static_cast<unsigned>(local_dimension);
  }
  return out;
}

Configuration Configuration::from_levels(std::span<const int> levels, int local_dimension) {
  check_shape(static_cast<int>(levels.size()), local_dimension);
  std::uint64_t w = 0;
  for (int l : levels) {
    if (l < 0 || l >= local_dimension) throw std::invalid_argument("level out of range");
    w = w * static_cast<unsigned>(local_dimension) + static_cast<unsigned>(l);
  }
  return Configuration{w, static_cast<int>(levels.size()), local_dimension};
}

SectorBasis SectorBasis::enumerate(int chain_length, int local_dimension, int charge) {
  check_shape(chain_length, local_dimension);
  check_charge(chain_length, local_dimension, charge);

  SectorBasis basis;
  basis.n_ = chain_length;
  basis.d_ = local_dimension;
  basis.charge_ = charge;

  basis.pow_.resize(static_cast<std::size_t>(chain_length));
  std::uint64_t p = 1;
  for (int site = chain_length - 1; site >= 0; --site) {
    basis.pow_[static_cast<std::size_t>(site)] = p;
    if (site > 0) p *= static_cast<unsigned>(local_dimension);
  }

  std::int64_t dim = 0;
  if (local_dimension == 2) {
    basis.binom_ = pascal_table(chain_length);
    dim = basis.binom(chain_length, charge);
  } else {
    basis.ways_ = suffix_table(chain_length);
    dim = basis.suffix_count(0, charge);
  }
  if (dim >= kMaxDimension)
    throw CapacityError("sector dimension " + (dim == kCountCap ? std::string("overflow") : std::to_string(dim)) +
                        " exceeds the 2^31 limit");

  basis.words_.reserve(static_cast<std::size_t>(dim));
  if (local_dimension == 2) {
    // Gosper's hack walks the M-bit words in ascending numeric order.
    std::uint64_t w = charge == 0 ? 0 : (~std::uint64_t{0} >> (64 - charge));
    basis.words_.push_back(w);
    while (static_cast<std::int64_t>(basis.words_.size()) < dim) {
      std::uint64_t t = w | (w - 1);
      w = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(w) + 1));
      basis.words_.push_back(w);
    }
  } else {
    // Digit-by-digit generation, most significant site first; pruning on the
    // achievable remaining charge keeps the walk at O(D*N).
    auto generate = [&](auto&& self, int site, int remaining, std::uint64_t prefix) -> void {
      if (site == chain_length) {
        basis.words_.push_back(prefix);
        return;
      }
      int sites_left = chain_length - site - 1;
      for (int level = 0; level < 3; ++level) {
        int r = remaining - (level - 1);
        if (r < -sites_left || r > sites_left) continue;
        self(self, site + 1, r, prefix * 3 + static_cast<unsigned>(level));
      }
    };
    generate(generate, 0, charge, 0);
  }
  assert(static_cast<std::int64_t>(basis.words_.size()) == dim);

  basis.levels_.resize(static_cast<std::size_t>(dim) * static_cast<std::size_t>(chain_length));
  for (std::int64_t i = 0; i < dim; ++i) {
    std::uint64_t w = basis.words_[static_cast<std::size_t>(i)];
    auto* row = &basis.levels_[static_cast<std::size_t>(i) * static_cast<std::size_t>(chain_length)];
    for (int site = chain_length - 1; site >= 0; --site) {
      row[site] = static_cast<std::uint8_t>(w % static_cast<unsigned>(local_dimension));
      w /= static_cast<unsigned>(local_dimension);
    }
  }
  return basis;
}

std::int64_t SectorBasis::binom(int n, int k) const {
  if (k < 0 || k > n) return 0;
  return binom_[static_cast<std::size_t>(n) * (n_ + 1) + k];
}

std::int64_t SectorBasis::suffix_count(int site, int remaining_charge) const {
  if (remaining_charge < -n_ || remaining_charge > n_) return 0;
  return ways_[static_cast<std::size_t>(site) * (2 * n_ + 1) + remaining_charge + n_];
}

Configuration SectorBasis::configuration(std::int64_t index) const {
  return Configuration{word(index), n_, d_};
}

std::uint64_t SectorBasis::word(std::int64_t index) const {
  if (index < 0 || index >= dimension()) throw std::out_of_range("configuration index out of range");
  return words_[static_cast<std::size_t>(index)];
}

std::int64_t SectorBasis::rank(std::uint64_t w) const {
  if (d_ == 2) {
    if (n_ < 64 && (w >> n_) != 0) throw MembershipError("configuration word has more sites than the sector");
    if (std::popcount(w) != charge_)
      throw MembershipError("configuration charge does not match the sector");
    std::int64_t r = 0;
    int k = 0;
    std::uint64_t bits = w;
    while (bits != 0) {
      int p = std::countr_zero(bits);
      bits &= bits - 1;
      r += binom(p, ++k);
    }
    return r;
  }
  if (w >= pow_[0] * 3) throw MembershipError("configuration word has more sites than the sector");
  std::int64_t r = 0;
  int remaining = charge_;
  int total = 0;
  for (int site = 0; site < n_; ++site) {
    int level = static_cast<int>((w / pow_[static_cast<std::size_t>(site)]) % 3);
    total += level - 1;
    for (int lower = 0; lower < level; ++lower)
      r += suffix_count(site + 1, remaining - (lower - 1));
    remaining -= level - 1;
  }
  if (total != charge_) throw MembershipError("configuration charge does not match the sector");
  return r;
}

std::int64_t SectorBasis::rank(const Configuration& config) const {
  if (config.chain_length != n_ || config.local_dimension != d_)
    throw MembershipError("configuration shape does not match the sector");
  return rank(config.word);
}

int SectorBasis::site_level(std::int64_t index, int site) const {
  if (site < 0 || site >= n_) throw std::out_of_range("site out of range");
  if (index < 0 || index >= dimension()) throw std::out_of_range("configuration index out of range");
  return levels_[static_cast<std::size_t>(index) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(site)];
}

std::span<const std::uint8_t> SectorBasis::level_row(std::int64_t index) const {
  if (index < 0 || index >= dimension()) throw std::out_of_range("configuration index out of range");
  return {&levels_[static_cast<std::size_t>(index) * static_cast<std::size_t>(n_)],
          static_cast<std::size_t>(n_)};
}

std::vector<std::int64_t> SectorBasis::site_level_counts(int site) const {
  if (site < 0 || site >= n_) throw std::out_of_range("site out of range");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(d_), 0);
  const std::int64_t dim = dimension();
  for (std::int64_t i = 0; i < dim; ++i)
    ++counts[levels_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                     static_cast<std::size_t>(site)]];
  return counts;
}

std::int64_t sector_dimension(int chain_length, int local_dimension, int charge) {
  check_shape(chain_length, local_dimension);
  check_charge(chain_length, local_dimension, charge);
  std::int64_t dim = 0;
  if (local_dimension == 2) {
    auto t = pascal_table(chain_length);
    dim = t[static_cast<std::size_t>(chain_length) * (chain_length + 1) + charge];
  } else {
    auto t = suffix_table(chain_length);
    dim = t[static_cast<std::size_t>(charge + chain_length)];
  }
  if (dim >= kMaxDimension)
    throw CapacityError("sector dimension exceeds the 2^31 limit");
  return dim;
}

}  // namespace typlab
