#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "typlab/records.hpp"

namespace typlab {

/// Interaction angle used throughout the spin-1/2 experiments (0.375 pi).
inline constexpr double kDefaultTheta = 0.375 * std::numbers::pi;

struct GridPoint {
  int chain_length = 0;
  int charge = 0;
};

/// One experiment family over a grid of sectors. Spin-half families are
/// deterministic (samples ignored); the spin-one ensemble and the GOE
/// baseline run `samples` independent draws per grid point with per-job
/// seeds derived from the master seed. Workers > 1 executes grid points
/// concurrently; admission is gated by the memory budget so at most one
/// maximal-dimension decomposition is in flight. Results are collected in
/// grid order regardless of completion order.
struct ExperimentPlan {
  std::string family;  // "half", "half-1", "half-2", "fixed-m", "spin-one", "goe"
  std::vector<GridPoint> grid;
  double theta = kDefaultTheta;
  int samples = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string spectra_dir;  // when non-empty, dump per-sector spectrum CSVs here
};

/// Sector grids of the three odd-N spin-half families ("half", "half-1",
/// "half-2": M = trunc(N/2) - k). Points with M < 1 are dropped: they are
/// one-dimensional, identically typical, and cannot sit on a log-log curve.
std::vector<GridPoint> spin_half_family_grid(const std::string& family, int n_min, int n_max);

/// Fixed-M sectors for chain lengths n_min..n_max (requires N > M).
std::vector<GridPoint> fixed_m_grid(int m, int n_min, int n_max);

/// Zero-magnetization spin-1 sectors for chain lengths n_min..n_max.
std::vector<GridPoint> spin_one_grid(int n_min, int n_max);

struct EnsembleResult {
  std::vector<ResultRecord> records;
  std::vector<AggregateRow> curve;  // per-dimension mean / std / stderr
};

/// Deterministic sweep over spin-1/2 sectors at a fixed interaction angle.
std::vector<ResultRecord> run_spin_half_sweep(const ExperimentPlan& plan);

/// GOE matrices of each sector's dimension, measured against that sector's
/// basis labels and micro-canonical reference.
EnsembleResult run_goe_baseline(const ExperimentPlan& plan);

/// Random spin-1 bond operators: one operator per sample, shared by every
/// chain length in the grid.
EnsembleResult run_spin_one_ensemble(const ExperimentPlan& plan);

}  // namespace typlab
