#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "typlab/basis.hpp"
#include "typlab/spectra.hpp"

namespace typlab {

/// Diagonal of the single-site reduced density matrix: p[m] is the
/// population of level m on one site for one pure state. Within a
/// fixed-charge sector the off-diagonals vanish identically (two sector
/// configurations cannot differ at a single site), so the diagonal is the
/// whole state.
using SitePopulations = std::vector<double>;

/// Populations follow p[m] = sum over configurations with site == m of the
/// squared amplitude. The vector must be unit norm within 1e-8.
SitePopulations reduced_populations(const Eigen::VectorXd& state, const SectorBasis& basis,
                                    int site);

/// Single-site populations of the maximally mixed state on the sector,
/// obtained by counting. The integer counts make the exact rational value
/// available alongside the floating-point populations (spin-1/2:
/// counts[up]/dimension == M/N).
struct MicrocanonicalReference {
  int chain_length = 0;
  int local_dimension = 2;
  int charge = 0;
  std::int64_t dimension = 0;
  std::vector<std::int64_t> level_counts;
  SitePopulations populations;
};

MicrocanonicalReference microcanonical_reference(const SectorBasis& basis);

/// Atypicality of one sector Hamiltonian: the rms deviation of per-eigenstate
/// single-site populations from the micro-canonical reference, over all
/// sites and all eigenstates.
///
/// Per (state n, site j) the deviation is the up-population difference for
/// spin-1/2, and for spin-1 the root of the summed squared differences of
/// the m=+1 and m=0 populations (two components determine the third by
/// normalization). delta_rms = sqrt(sum of squared deviations / (D*N)).
struct TypicalityReport {
  int chain_length = 0;
  int local_dimension = 2;
  int charge = 0;
  std::int64_t dimension = 0;
  double delta_rms = 0.0;
  /// Optional full deviation array, rows = eigenstates, cols = sites.
  std::optional<Eigen::MatrixXd> state_site_deviations;
  GapStatistics degeneracy;
  /// max over sites and levels of |sum_n (p_n[m] - ref[m])|; the equal-weight
  /// mixture of all eigenstates reproduces the reference exactly, so this is
  /// a pure roundoff residual.
  double population_sum_residual = 0.0;
  // Metadata stamped by the experiment runner.
  double wall_time_seconds = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t spec_hash = 0;
};

struct AtypicalityOptions {
  bool retain_deviations = false;
};

/// Requires a full decomposition of this sector's Hamiltonian (dimension
/// match enforced, at least two eigenstates for the attached gap
/// statistics). Deviations are computed over solver-returned eigenvectors
/// as-is, including numerically degenerate ones.
TypicalityReport atypicality(const EigenDecomposition& decomposition, const SectorBasis& basis,
                             const AtypicalityOptions& options = {});

}  // namespace typlab
