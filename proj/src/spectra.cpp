#include "typlab/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "typlab/errors.hpp"
#include "typlab/memory.hpp"

namespace typlab {

EigenDecomposition eig_symmetric(const Eigen::MatrixXd& matrix) {
  const Eigen::Index n = matrix.rows();
  if (n < 1 || matrix.cols() != n) throw std::invalid_argument("matrix must be square and non-empty");
  if (!matrix.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  const double scale = matrix.cwiseAbs().maxCoeff();
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) throw std::invalid_argument("matrix is not symmetric");
  if (eig_memory_bytes(n) > memory_budget_bytes())
    throw CapacityError("eigendecomposition of dimension " + std::to_string(n) +
                        " exceeds the memory budget");

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = matrix;
  const auto info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                                   out.eigenvectors.data(), static_cast<lapack_int>(n),
                                   out.eigenvalues.data());
  if (info != 0)
    throw std::runtime_error("dsyevd failed with info=" + std::to_string(info));
  return out;
}

Eigen::VectorXd adjacent_gaps(const Eigen::VectorXd& eigenvalues) {
  if (eigenvalues.size() < 2)
    throw std::invalid_argument("gap statistics need at least two eigenvalues");
  return eigenvalues.tail(eigenvalues.size() - 1) - eigenvalues.head(eigenvalues.size() - 1);
}

GapStatistics gap_statistics(const Eigen::VectorXd& eigenvalues) {
  GapStatistics stats;
  stats.gaps = adjacent_gaps(eigenvalues);
  if (stats.gaps.minCoeff() < 0.0)
    throw std::invalid_argument("eigenvalues must be non-decreasing");
  stats.mean_gap = stats.gaps.mean();
  stats.threshold = stats.mean_gap / 10.0;

  const auto dim = static_cast<double>(eigenvalues.size());
  if (stats.mean_gap == 0.0) {
    stats.degeneracy_fraction = 1.0;
    return stats;
  }
  std::vector<double> sorted(stats.gaps.data(), stats.gaps.data() + stats.gaps.size());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  std::int64_t count = 0;
  for (double gap : sorted) {
    sum += gap;
    if (!(sum < stats.threshold)) break;
    ++count;
  }
  stats.degeneracy_fraction = static_cast<double>(count) / dim;
  return stats;
}

}  // namespace typlab
