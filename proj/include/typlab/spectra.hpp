#pragma once

#include <Eigen/Dense>

namespace typlab {

/// Full spectrum of a real symmetric matrix. Eigenvalues ascend; column k of
/// eigenvectors is the unit-norm eigenvector of eigenvalue k.
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

/// Dense symmetric eigendecomposition (divide-and-conquer). Rejects
/// non-square, non-finite, or non-symmetric input (symmetry within 1e-12
/// relative) and matrices whose workspace would exceed the memory budget.
/// Deterministic for identical input under a fixed thread configuration.
EigenDecomposition eig_symmetric(const Eigen::MatrixXd& matrix);

/// Adjacent spectral gaps and the degeneracy fraction f_deg: the largest
/// number of gaps whose combined sum stays below one tenth of the mean gap,
/// divided by the number of eigenvalues.
struct GapStatistics {
  Eigen::VectorXd gaps;  // adjacent differences, spectral order
  double mean_gap = 0.0;
  double threshold = 0.0;  // mean_gap / 10
  double degeneracy_fraction = 0.0;
};

/// Computes GapStatistics from an ascending spectrum of at least two
/// eigenvalues. The "combined sum" takes the k smallest gaps globally,
/// which maximizes the count; the threshold comparison is strict. A fully
/// degenerate spectrum (mean gap zero) reports f_deg = 1.
GapStatistics gap_statistics(const Eigen::VectorXd& eigenvalues);

/// Adjacent gaps in spectral order, unnormalized, for external histogramming.
Eigen::VectorXd adjacent_gaps(const Eigen::VectorXd& eigenvalues);

}  // namespace typlab
