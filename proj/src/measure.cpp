#include "typlab/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace typlab {

SitePopulations reduced_populations(const Eigen::VectorXd& state, const SectorBasis& basis,
                                    int site) {
  if (state.size() != basis.dimension())
    throw std::invalid_argument("state length does not match the sector dimension");
  if (site < 0 || site >= basis.chain_length()) throw std::out_of_range("site out of range");
  if (std::abs(state.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("state is not normalized");

  SitePopulations populations(static_cast<std::size_t>(basis.local_dimension()), 0.0);
  const std::int64_t dim = basis.dimension();
  for (std::int64_t i = 0; i < dim; ++i)
    populations[static_cast<std::size_t>(basis.site_level(i, site))] += state[i] * state[i];
  return populations;
}

MicrocanonicalReference microcanonical_reference(const SectorBasis& basis) {
  MicrocanonicalReference ref;
  ref.chain_length = basis.chain_length();
  ref.local_dimension = basis.local_dimension();
  ref.charge = basis.charge();
  ref.dimension = basis.dimension();
  ref.level_counts = basis.site_level_counts(0);
  ref.populations.resize(ref.level_counts.size());
  for (std::size_t m = 0; m < ref.level_counts.size(); ++m)
    ref.populations[m] =
        static_cast<double>(ref.level_counts[m]) / static_cast<double>(ref.dimension);
  return ref;
}

TypicalityReport atypicality(const EigenDecomposition& decomposition, const SectorBasis& basis,
                             const AtypicalityOptions& options) {
  const std::int64_t dim = basis.dimension();
  const int n = basis.chain_length();
  const int d = basis.local_dimension();
  if (decomposition.eigenvalues.size() != dim || decomposition.eigenvectors.rows() != dim ||
      decomposition.eigenvectors.cols() != dim)
    throw std::invalid_argument("decomposition does not match the sector dimension");

  const MicrocanonicalReference ref = microcanonical_reference(basis);

  TypicalityReport report;
  report.chain_length = n;
  report.local_dimension = d;
  report.charge = basis.charge();
  report.dimension = dim;
  report.degeneracy = gap_statistics(decomposition.eigenvalues);
  if (options.retain_deviations) report.state_site_deviations.emplace(dim, n);

  // Per-(site, level) running sum of p_n[m] over eigenstates, for the
  // trace-preservation residual.
  std::vector<double> population_sums(static_cast<std::size_t>(n) * d, 0.0);
  std::vector<double> populations(static_cast<std::size_t>(n) * d);

  double sum_sq = 0.0;
  for (std::int64_t state = 0; state < dim; ++state) {
    std::fill(populations.begin(), populations.end(), 0.0);
    const auto column = decomposition.eigenvectors.col(state);
    for (std::int64_t i = 0; i < dim; ++i) {
      const double weight = column[i] * column[i];
      const auto levels = basis.level_row(i);
      for (int site = 0; site < n; ++site)
        populations[static_cast<std::size_t>(site) * d + levels[static_cast<std::size_t>(site)]] +=
            weight;
    }
    for (int site = 0; site < n; ++site) {
      const double* p = &populations[static_cast<std::size_t>(site) * d];
      double dev_sq = 0.0;
      if (d == 2) {
        const double diff = p[1] - ref.populations[1];
        dev_sq = diff * diff;
        if (report.state_site_deviations) (*report.state_site_deviations)(state, site) = diff;
      } else {
        const double diff_up = p[2] - ref.populations[2];
        const double diff_mid = p[1] - ref.populations[1];
        dev_sq = diff_up * diff_up + diff_mid * diff_mid;
        if (report.state_site_deviations)
          (*report.state_site_deviations)(state, site) = std::sqrt(dev_sq);
      }
      sum_sq += dev_sq;
      for (int m = 0; m < d; ++m)
        population_sums[static_cast<std::size_t>(site) * d + m] += p[m];
    }
  }

  report.delta_rms = std::sqrt(sum_sq / (static_cast<double>(dim) * static_cast<double>(n)));

  double residual = 0.0;
  for (int site = 0; site < n; ++site)
    for (int m = 0; m < d; ++m)
      residual = std::max(residual,
                          std::abs(population_sums[static_cast<std::size_t>(site) * d + m] -
                                   static_cast<double>(ref.level_counts[m])));
  report.population_sum_residual = residual;
  return report;
}

}  // namespace typlab
