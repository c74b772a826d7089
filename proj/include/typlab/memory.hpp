#pragma once

#include <cstddef>
#include <cstdint>

namespace typlab {

/// Dense-matrix memory budget in bytes. Defaults to 4096 MB; override with
/// the TYPICALITY_MEM_BUDGET_MB environment variable.
std::size_t memory_budget_bytes();

/// Bytes a full eigendecomposition of one dense dim x dim matrix needs
/// (input copy, eigenvector storage, solver workspace).
std::size_t eig_memory_bytes(std::int64_t dim);

}  // namespace typlab
