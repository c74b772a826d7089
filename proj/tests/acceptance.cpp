// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Runs everything by default; pass criterion numbers to run a
// subset (the spin-half family sweeps and the spin-1 ensemble are shared
// between criteria and computed once).

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "typlab/experiments.hpp"
#include "typlab/fit.hpp"
#include "typlab/hamiltonian.hpp"
#include "typlab/measure.hpp"
#include "typlab/records.hpp"
#include "typlab/rng.hpp"
#include "typlab/spectra.hpp"

using namespace typlab;

namespace {

constexpr double kTheta = 0.375 * std::numbers::pi;
constexpr std::uint64_t kSeed = 20260808;

struct Detail {
  std::string text;
  void add(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
    va_list args;
    va_start(args, fmt);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    text += "         ";
    text += buf;
    text += '\n';
  }
};

// Shared experiment runs.
class Lab {
 public:
  const std::map<std::string, std::vector<ResultRecord>>& families() {
    if (!families_) {
      families_.emplace();
      for (const char* family : {"half", "half-1", "half-2"}) {
        ExperimentPlan plan;
        plan.family = family;
        plan.grid = spin_half_family_grid(family, 5, 13);
        plan.theta = kTheta;
        (*families_)[family] = run_spin_half_sweep(plan);
      }
    }
    return *families_;
  }

  const EnsembleResult& spin_one() {
    if (!spin_one_) {
      ExperimentPlan plan;
      plan.family = "spin-one";
      plan.grid = spin_one_grid(6, 9);
      plan.samples = 21;
      plan.seed = kSeed;
      spin_one_ = run_spin_one_ensemble(plan);
    }
    return *spin_one_;
  }

 private:
  std::optional<std::map<std::string, std::vector<ResultRecord>>> families_;
  std::optional<EnsembleResult> spin_one_;
};

Lab lab;

TypicalityReport measure_sector(int n, int m) {
  const auto basis = SectorBasis::enumerate(n, 2, m);
  const ChainSpec spec{n, 2, 1.0, 1.0, SpinHalfAngle{kTheta}};
  return atypicality(eig_symmetric(build_sector_hamiltonian(spec, basis)), basis);
}

bool criterion_half_filling(Detail& detail) {
  bool pass = true;
  for (int n : {4, 6, 8, 10, 12}) {
    const auto report = measure_sector(n, n / 2);
    detail.add("N=%2d M=%2d D=%4lld delta_rms=%.3e", n, n / 2, (long long)report.dimension,
               report.delta_rms);
    pass = pass && report.delta_rms < 1e-10;
  }
  return pass;
}

bool criterion_counting_identity(Detail& detail) {
  bool exact = true;
  double worst_uniform = 0.0;
  for (int n = 2; n <= 14; ++n) {
    for (int m = 1; m < n; ++m) {
      const auto basis = SectorBasis::enumerate(n, 2, m);
      const auto ref = microcanonical_reference(basis);
      if (ref.level_counts[1] * n != static_cast<std::int64_t>(m) * ref.dimension) exact = false;
      const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(
          basis.dimension(), 1.0 / std::sqrt(static_cast<double>(basis.dimension())));
      for (int site = 0; site < n; ++site) {
        const auto p = reduced_populations(uniform, basis, site);
        worst_uniform = std::max(worst_uniform, std::abs(p[1] - double(m) / n));
      }
    }
  }
  detail.add("rational identity %s over all 1 <= M < N <= 14", exact ? "exact" : "VIOLATED");
  detail.add("worst uniform-state population error %.3e (tolerance 1e-12)", worst_uniform);
  return exact && worst_uniform <= 1e-12;
}

bool criterion_projection_oracle(Detail& detail) {
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const ChainSpec spec{n, 2, 1.0, 1.0, SpinHalfAngle{kTheta}};
    const auto full = build_full_hamiltonian_oracle(spec);
    for (int m = 0; m <= n; ++m) {
      const auto basis = SectorBasis::enumerate(n, 2, m);
      const auto block = build_sector_hamiltonian(spec, basis);
      for (std::int64_t i = 0; i < basis.dimension(); ++i)
        for (std::int64_t j = 0; j < basis.dimension(); ++j)
          worst = std::max(worst, std::abs(block(i, j) -
                                           full(static_cast<Eigen::Index>(basis.word(i)),
                                                static_cast<Eigen::Index>(basis.word(j)))));
    }
  }
  detail.add("spin-1/2, N <= 10, all sectors: max |sector - projected oracle| = %.3e", worst);
  double worst_spin1 = 0.0;
  for (int n = 2; n <= 6; ++n) {
    Rng rng(derive_seed(kSeed, "oracle", 0, static_cast<std::uint64_t>(n)));
    const ChainSpec spec{n, 3, 1.0, 1.0, sample_spin_one_interaction(rng)};
    const auto full = build_full_hamiltonian_oracle(spec);
    const auto basis = SectorBasis::enumerate(n, 3, 0);
    const auto block = build_sector_hamiltonian(spec, basis);
    for (std::int64_t i = 0; i < basis.dimension(); ++i)
      for (std::int64_t j = 0; j < basis.dimension(); ++j)
        worst_spin1 = std::max(worst_spin1, std::abs(block(i, j) -
                                                     full(static_cast<Eigen::Index>(basis.word(i)),
                                                          static_cast<Eigen::Index>(basis.word(j)))));
  }
  detail.add("spin-1, N <= 6, zero magnetization: max deviation = %.3e", worst_spin1);
  return worst <= 1e-12 && worst_spin1 <= 1e-12;
}

bool criterion_eigensolver_contract(Detail& detail) {
  const Eigen::Index sizes[] = {16, 128, 1024};
  double worst_residual = 0.0, worst_ortho = 0.0, worst_rebuild = 0.0, worst_trace = 0.0;
  Rng rng(derive_seed(kSeed, "contract"));
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index dim = sizes[i % 3];
    const auto h = sample_goe(dim, rng);
    const auto eig = eig_symmetric(h);
    const double norm = h.norm();
    const Eigen::MatrixXd residual =
        h * eig.eigenvectors - eig.eigenvectors * eig.eigenvalues.asDiagonal();
    for (Eigen::Index k = 0; k < dim; ++k)
      worst_residual = std::max(worst_residual, residual.col(k).norm() / norm);
    const Eigen::MatrixXd gram = eig.eigenvectors.transpose() * eig.eigenvectors;
    worst_ortho = std::max(
        worst_ortho, (gram - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd rebuilt =
        eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.transpose();
    worst_rebuild = std::max(worst_rebuild, (rebuilt - h).norm() / norm);
    worst_trace = std::max(worst_trace, std::abs(eig.eigenvalues.sum() - h.trace()) / norm);
  }
  detail.add("100 GOE matrices, D in {16,128,1024}");
  detail.add("residual %.3e (<=1e-9)  orthonormality %.3e (<=1e-9)", worst_residual, worst_ortho);
  detail.add("reconstruction %.3e (<=1e-8)  trace %.3e (<=1e-9)", worst_rebuild, worst_trace);
  return worst_residual <= 1e-9 && worst_ortho <= 1e-9 && worst_rebuild <= 1e-8 &&
         worst_trace <= 1e-9;
}

bool criterion_goe_scaling(Detail& detail) {
  ExperimentPlan plan;
  plan.family = "goe";
  plan.grid = {{8, 4}, {10, 5}, {12, 6}, {14, 7}};
  plan.samples = 50;
  plan.seed = kSeed;
  const auto result = run_goe_baseline(plan);
  std::vector<std::pair<double, double>> points;
  for (const auto& row : result.curve) {
    points.emplace_back(static_cast<double>(row.dimension), row.delta_mean);
    detail.add("D=%5lld <delta>=%.6f +- %.6f (50 samples)", (long long)row.dimension,
               row.delta_mean, row.delta_stderr.value_or(0.0));
  }
  std::sort(points.begin(), points.end());
  const auto fit = fit_power_law(points);
  detail.add("fitted exponent -%.4f +- %.4f (target -0.5 +- 0.05)", fit.exponent,
             fit.exponent_stderr);
  return std::abs(fit.exponent - 0.5) <= 0.05;
}

bool criterion_family_trend(Detail& detail) {
  bool pass = true;
  for (const auto& [family, records] : lab.families()) {
    std::vector<std::pair<double, double>> points;
    bool decreasing = true;
    for (const auto& record : records) {
      points.emplace_back(static_cast<double>(record.dimension), *record.delta_rms);
      if (points.size() > 1 && points.back().second >= points[points.size() - 2].second)
        decreasing = false;
    }
    const auto fit = fit_power_law(points);
    detail.add("%-7s delta %s from %.4f to %.4f over D=%g..%g, |alpha|=%.3f (< 0.5)",
               family.c_str(), decreasing ? "strictly decreasing" : "NOT DECREASING",
               points.front().second, points.back().second, points.front().first,
               points.back().first, std::abs(fit.exponent));
    pass = pass && decreasing && std::abs(fit.exponent) < 0.5;
  }
  return pass;
}

bool criterion_fixed_m_plateau(Detail& detail) {
  ExperimentPlan plan;
  plan.family = "fixed-m";
  plan.grid = fixed_m_grid(6, 13, 15);
  plan.theta = kTheta;
  const auto records = run_spin_half_sweep(plan);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (const auto& record : records) {
    detail.add("N=%d D=%5lld delta_rms=%.6f", record.chain_length, (long long)record.dimension,
               *record.delta_rms);
    lo = std::min(lo, *record.delta_rms);
    hi = std::max(hi, *record.delta_rms);
    sum += *record.delta_rms;
  }
  const double spread = (hi - lo) / (sum / static_cast<double>(records.size()));
  const bool in_window = lo >= 0.30 && hi <= 0.55;
  const bool flat = spread < 0.15;
  detail.add("window [0.30, 0.55]: %s;  spread %.1f%% (< 15%%): %s", in_window ? "pass" : "FAIL",
             100.0 * spread, flat ? "pass" : "FAIL");
  if (!in_window)
    detail.add("note: measured plateau sits near 0.04; see the sector (13,6) value in the");
  if (!in_window)
    detail.add("      half family of criterion 6, which this grid point coincides with");
  return in_window && flat;
}

bool criterion_fdeg_trend(Detail& detail) {
  bool pass = true;
  auto count_inversions = [](const std::vector<std::pair<double, double>>& curve) {
    int inversions = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
      if (curve[i].second > curve[i - 1].second) ++inversions;
    return inversions;
  };
  for (const auto& [family, records] : lab.families()) {
    std::vector<std::pair<double, double>> curve;
    for (const auto& record : records)
      curve.emplace_back(static_cast<double>(record.dimension), *record.f_deg);
    const int inversions = count_inversions(curve);
    std::string values;
    for (const auto& [dim, fdeg] : curve) {
      char buf[48];
      std::snprintf(buf, sizeof buf, " %.4f@D=%g", fdeg, dim);
      values += buf;
    }
    detail.add("%-8s f_deg%s -> %d inversion(s)", family.c_str(), values.c_str(), inversions);
    pass = pass && inversions <= 1;
  }
  std::vector<std::pair<double, double>> spin1_curve;
  std::string values;
  for (const auto& row : lab.spin_one().curve) {
    spin1_curve.emplace_back(static_cast<double>(row.dimension), row.fdeg_mean);
    char buf[48];
    std::snprintf(buf, sizeof buf, " %.4f@D=%lld", row.fdeg_mean, (long long)row.dimension);
    values += buf;
  }
  const int inversions = count_inversions(spin1_curve);
  detail.add("%-8s <f_deg>%s -> %d inversion(s)", "spin-one", values.c_str(), inversions);
  pass = pass && inversions <= 1;
  return pass;
}

bool criterion_spin_one_power_law(Detail& detail) {
  const auto& result = lab.spin_one();
  std::vector<std::pair<double, double>> points;
  for (const auto& row : result.curve) {
    points.emplace_back(static_cast<double>(row.dimension), row.delta_mean);
    detail.add("N=%d D=%5lld <delta>=%.6f +- %.6f", row.chain_length, (long long)row.dimension,
               row.delta_mean, row.delta_stderr.value_or(0.0));
  }
  std::sort(points.begin(), points.end());
  const std::size_t exclude[] = {0};
  const auto fit = fit_power_law(points, exclude);

  int monotone = 0;
  std::map<int, std::pair<double, double>> deltas;  // sample -> (delta at N=6, at N=9)
  for (const auto& record : result.records) {
    if (record.chain_length == 6) deltas[record.sample].first = *record.delta_rms;
    if (record.chain_length == 9) deltas[record.sample].second = *record.delta_rms;
  }
  for (const auto& [sample, pair] : deltas)
    if (pair.second < pair.first) ++monotone;

  detail.add("alpha = %.4f +- %.4f excluding the left-most point (target [0.10, 0.30])",
             fit.exponent, fit.exponent_stderr);
  detail.add("delta(N=9) < delta(N=6) for %d/21 samples (need >= 14)", monotone);
  return fit.exponent >= 0.10 && fit.exponent <= 0.30 && monotone >= 14;
}

bool criterion_fit_exactness(Detail& detail) {
  double worst = 0.0;
  for (const auto& [alpha, prefactor] : {std::pair{0.5, 1.0}, {0.204, 3.0}, {0.731, 0.02}}) {
    std::vector<std::pair<double, double>> points;
    for (double dim : {10.0, 70.0, 252.0, 924.0, 3432.0})
      points.emplace_back(dim, prefactor * std::pow(dim, -alpha));
    const auto fit = fit_power_law(points);
    worst = std::max(worst, std::abs(fit.exponent - alpha) / alpha);
  }
  detail.add("worst relative exponent recovery error %.3e (tolerance 1e-10)", worst);
  return worst <= 1e-10;
}

bool criterion_sum_rule(Detail& detail) {
  double worst = 0.0;
  for (const auto& [family, records] : lab.families())
    for (const auto& record : records)
      worst = std::max(worst, record.population_sum_residual.value_or(1.0));
  for (const auto& record : lab.spin_one().records)
    worst = std::max(worst, record.population_sum_residual.value_or(1.0));
  detail.add("max |sum_n delta_jn| over all sectors of criteria 6 and 9: %.3e (<= 1e-9)", worst);
  return worst <= 1e-9;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0 = no stated runtime bound
  std::function<bool(Detail&)> run;
};

const Criterion kCriteria[] = {
    {1, "half-filling exactness", 60, criterion_half_filling},
    {2, "micro-canonical counting identity", 0, criterion_counting_identity},
    {3, "projection-oracle equivalence", 300, criterion_projection_oracle},
    {4, "eigensolver contract", 300, criterion_eigensolver_contract},
    {5, "GOE scaling exponent", 1800, criterion_goe_scaling},
    {6, "spin-half sector trend", 1200, criterion_family_trend},
    {7, "fixed-M plateau", 900, criterion_fixed_m_plateau},
    {8, "degeneracy-fraction trend", 0, criterion_fdeg_trend},
    {9, "spin-1 ensemble power law", 3600, criterion_spin_one_power_law},
    {10, "fit machinery exactness", 0, criterion_fit_exactness},
    {11, "sum-rule consistency", 0, criterion_sum_rule},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& criterion : kCriteria) {
    if (!selected.empty() && !selected.count(criterion.id)) continue;
    Detail detail;
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = criterion.run(detail);
    } catch (const std::exception& e) {
      detail.add("exception: %s", e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = criterion.budget_seconds == 0 || elapsed < criterion.budget_seconds;
    if (!in_budget) detail.add("runtime %.0fs exceeds the %.0fs budget", elapsed,
                               criterion.budget_seconds);
    pass = pass && in_budget;
    std::printf("[%s] criterion %2d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", criterion.id,
                criterion.name, elapsed);
    std::fputs(detail.text.c_str(), stdout);
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
