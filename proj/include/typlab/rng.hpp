#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace typlab {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Per-job seed derived from the master seed and the grid coordinates, so
/// that grid points are independent and runs are resumable. Pure integer
/// mixing, stable across platforms.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view family,
                                    std::uint64_t sample = 0, std::uint64_t n = 0,
                                    std::int64_t charge = 0) noexcept {
  std::uint64_t h = splitmix64(master ^ fnv1a(family));
  h = splitmix64(h ^ sample);
  h = splitmix64(h ^ n);
  h = splitmix64(h ^ static_cast<std::uint64_t>(charge));
  return h;
}

using Rng = std::mt19937_64;

}  // namespace typlab
