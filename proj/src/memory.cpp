#include "typlab/memory.hpp"

#include <cstdlib>
#include <string>

namespace typlab {

std::size_t memory_budget_bytes() {
  constexpr std::size_t kDefaultMb = 4096;
  std::size_t mb = kDefaultMb;
  if (const char* env = std::getenv("TYPICALITY_MEM_BUDGET_MB")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && parsed > 0) mb = static_cast<std::size_t>(parsed);
  }
  return mb * std::size_t{1024} * 1024;
}

std::size_t eig_memory_bytes(std::int64_t dim) {
  const auto n = static_cast<std::size_t>(dim);
  // Eigenvector storage, divide-and-conquer workspace (1 + 6n + 2n^2
  // doubles), integer workspace, eigenvalues.
  return sizeof(double) * (3 * n * n + 8 * n + 64);
}

}  // namespace typlab
