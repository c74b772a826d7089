#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "typlab/experiments.hpp"
#include "typlab/fit.hpp"
#include "typlab/hamiltonian.hpp"
#include "typlab/measure.hpp"
#include "typlab/rng.hpp"
#include "typlab/spectra.hpp"

using namespace typlab;

TEST_CASE("family grids") {
  const auto half = spin_half_family_grid("half", 5, 13);
  REQUIRE(half.size() == 5);
  CHECK(half.front().chain_length == 5);
  CHECK(half.front().charge == 2);
  CHECK(half.back().chain_length == 13);
  CHECK(half.back().charge == 6);

  // trunc(N/2)-2 would hit M = 0 at N = 5: a one-dimensional sector that has
  // no place on a log-log curve, so the family starts at N = 7.
  const auto half2 = spin_half_family_grid("half-2", 5, 13);
  REQUIRE(half2.size() == 4);
  CHECK(half2.front().chain_length == 7);
  CHECK(half2.front().charge == 1);

  const auto fixed = fixed_m_grid(6, 13, 15);
  REQUIRE(fixed.size() == 3);
  for (const auto& point : fixed) CHECK(point.charge == 6);

  const auto spin1 = spin_one_grid(6, 9);
  REQUIRE(spin1.size() == 4);
  for (const auto& point : spin1) CHECK(point.charge == 0);

  CHECK_THROWS_AS(spin_half_family_grid("bogus", 5, 13), std::invalid_argument);
  CHECK_THROWS_AS(fixed_m_grid(0, 5, 9), std::invalid_argument);
}

TEST_CASE("spin-half sweep matches the direct pipeline") {
  ExperimentPlan plan;
  plan.family = "half";
  plan.grid = spin_half_family_grid("half", 5, 7);
  const auto records = run_spin_half_sweep(plan);
  REQUIRE(records.size() == 2);

  for (const auto& record : records) {
    const auto basis = SectorBasis::enumerate(record.chain_length, 2, record.charge);
    const ChainSpec spec{record.chain_length, 2, 1.0, 1.0, SpinHalfAngle{kDefaultTheta}};
    const auto report = atypicality(eig_symmetric(build_sector_hamiltonian(spec, basis)), basis);
    CHECK(*record.delta_rms == report.delta_rms);
    CHECK(*record.f_deg == report.degeneracy.degeneracy_fraction);
    CHECK(*record.mean_gap == report.degeneracy.mean_gap);
    CHECK(record.dimension == basis.dimension());
    CHECK(*record.theta == kDefaultTheta);
  }
}

TEST_CASE("plans are reproducible and worker-count independent") {
  ExperimentPlan plan;
  plan.family = "goe";
  plan.grid = {{6, 3}, {7, 3}, {8, 4}};
  plan.samples = 4;
  plan.seed = 99;

  const auto serial = run_goe_baseline(plan);
  plan.workers = 2;
  const auto parallel = run_goe_baseline(plan);
  const auto repeat = run_goe_baseline(plan);

  REQUIRE(serial.records.size() == 12);
  REQUIRE(parallel.records.size() == 12);
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(*serial.records[i].delta_rms == *parallel.records[i].delta_rms);
    CHECK(*serial.records[i].delta_rms == *repeat.records[i].delta_rms);
    CHECK(*serial.records[i].f_deg == *parallel.records[i].f_deg);
    CHECK(serial.records[i].seed == parallel.records[i].seed);
  }
}

TEST_CASE("GOE baseline at dimension two matches the closed-form eigenproblem") {
  ExperimentPlan plan;
  plan.family = "goe";
  plan.grid = {{2, 1}};
  plan.samples = 1;
  plan.seed = 321;
  const auto result = run_goe_baseline(plan);
  REQUIRE(result.records.size() == 1);
  const auto& record = result.records[0];

  Rng rng(record.seed);
  const Eigen::MatrixXd h = sample_goe(2, rng);
  // Eigenvector of the lower eigenvalue: (c, lambda - a) up to normalization.
  const double a = h(0, 0), b = h(1, 1), c = h(0, 1);
  const double lambda = (a + b) / 2.0 - std::sqrt((a - b) * (a - b) / 4.0 + c * c);
  const double vy = lambda - a;
  const double s2 = vy * vy / (c * c + vy * vy);
  // In the sector (2,1) both sites and both eigenvectors contribute the same
  // squared deviation |s2 - 1/2|.
  CHECK(*record.delta_rms == doctest::Approx(std::abs(s2 - 0.5)).epsilon(1e-12));
}

TEST_CASE("spin-one ensemble shares one interaction per sample") {
  ExperimentPlan plan;
  plan.family = "spin-one";
  plan.grid = spin_one_grid(4, 5);
  plan.samples = 3;
  plan.seed = 2718;
  const auto result = run_spin_one_ensemble(plan);
  REQUIRE(result.records.size() == 6);

  for (int sample = 0; sample < 3; ++sample) {
    std::optional<SpinOneMatrix> shared;
    for (const auto& record : result.records) {
      if (record.sample != sample) continue;
      REQUIRE(record.interaction.has_value());
      if (!shared)
        shared = record.interaction;
      else
        CHECK(*record.interaction == *shared);
    }
  }
  CHECK(result.records[0].seed != result.records[2].seed);  // different samples
  CHECK(!result.curve.empty());

  // Per-sample record matches a direct computation with the recorded coupling.
  const auto& record = result.records[1];
  const auto basis = SectorBasis::enumerate(record.chain_length, 3, 0);
  const ChainSpec spec{record.chain_length, 3, 1.0, 1.0, *record.interaction};
  const auto report = atypicality(eig_symmetric(build_sector_hamiltonian(spec, basis)), basis);
  CHECK(*record.delta_rms == report.delta_rms);
}

TEST_CASE("GOE conclusions do not depend on the seed set") {
  auto run = [](std::uint64_t seed) {
    ExperimentPlan plan;
    plan.family = "goe";
    plan.grid = {{6, 3}, {8, 4}, {10, 5}};
    plan.samples = 30;
    plan.seed = seed;
    return run_goe_baseline(plan);
  };
  const auto first = run(1001);
  const auto second = run(2002);

  auto fit_of = [](const EnsembleResult& result) {
    std::vector<std::pair<double, double>> points;
    for (const auto& row : result.curve)
      points.emplace_back(static_cast<double>(row.dimension), row.delta_mean);
    std::sort(points.begin(), points.end());
    return fit_power_law(points);
  };
  const auto fit1 = fit_of(first);
  const auto fit2 = fit_of(second);
  const double combined = std::sqrt(fit1.exponent_stderr * fit1.exponent_stderr +
                                    fit2.exponent_stderr * fit2.exponent_stderr);
  CHECK(std::abs(fit1.exponent - fit2.exponent) < 3.0 * combined);

  // Sample-to-sample scatter of delta shrinks as the dimension grows.
  for (const auto& result : {std::cref(first), std::cref(second)})
    for (std::size_t i = 1; i < result.get().curve.size(); ++i)
      CHECK(*result.get().curve[i].delta_std < *result.get().curve[i - 1].delta_std);
}

TEST_CASE("capacity failures are recorded without aborting the sweep") {
  ExperimentPlan plan;
  plan.family = "half";
  plan.grid = {{45, 22}, {5, 2}};
  const auto records = run_spin_half_sweep(plan);
  REQUIRE(records.size() == 2);
  CHECK(!records[0].ok());
  CHECK(records[0].error.find("2^31") != std::string::npos);
  CHECK(records[1].ok());
  CHECK(*records[1].delta_rms > 0.0);
}

TEST_CASE("seed derivation separates grid coordinates") {
  CHECK(derive_seed(1, "goe", 0, 8, 4) != derive_seed(1, "goe", 1, 8, 4));
  CHECK(derive_seed(1, "goe", 0, 8, 4) != derive_seed(1, "goe", 0, 10, 5));
  CHECK(derive_seed(1, "goe", 0, 8, 4) != derive_seed(2, "goe", 0, 8, 4));
  CHECK(derive_seed(1, "goe", 0, 8, 4) != derive_seed(1, "spin-one", 0, 8, 4));
  CHECK(derive_seed(1, "goe", 0, 8, 4) == derive_seed(1, "goe", 0, 8, 4));
}

TEST_CASE("plan validation") {
  ExperimentPlan plan;
  plan.family = "half";
  CHECK_THROWS_AS(run_spin_half_sweep(plan), std::invalid_argument);  // empty grid
  plan.grid = {{5, 2}};
  plan.samples = 0;
  CHECK_THROWS_AS(run_spin_half_sweep(plan), std::invalid_argument);
  plan.samples = 1;
  plan.workers = 0;
  CHECK_THROWS_AS(run_spin_half_sweep(plan), std::invalid_argument);
}
