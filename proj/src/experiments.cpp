#include "typlab/experiments.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "typlab/errors.hpp"
#include "typlab/hamiltonian.hpp"
#include "typlab/measure.hpp"
#include "typlab/memory.hpp"
#include "typlab/rng.hpp"
#include "typlab/spectra.hpp"

namespace typlab {

namespace {

struct Job {
  std::string family;
  GridPoint point;
  int local_dimension = 2;
  int sample = 0;
  int total_samples = 1;
  std::uint64_t seed = 0;
  bool goe = false;
  double theta = kDefaultTheta;
  std::optional<SpinOneMatrix> interaction;
  std::string spectra_dir;
};

void dump_spectrum(const Job& job, const Eigen::VectorXd& eigenvalues) {
  std::string name = job.family + "_" + std::to_string(job.point.chain_length) + "_" +
                     std::to_string(job.point.charge);
  if (job.total_samples > 1) name += "_s" + std::to_string(job.sample);
  std::ofstream out(std::filesystem::path(job.spectra_dir) / (name + ".spectrum.csv"));
  out << "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    out << i << ',' << format_double(eigenvalues[i]) << '\n';
}

ResultRecord execute_job(const Job& job) {
  ResultRecord record;
  record.family = job.family;
  record.chain_length = job.point.chain_length;
  record.local_dimension = job.local_dimension;
  record.charge = job.point.charge;
  record.sample = job.sample;
  record.seed = job.seed;
  if (job.local_dimension == 2 && !job.goe) record.theta = job.theta;
  if (job.interaction) record.interaction = job.interaction;

  const auto start = std::chrono::steady_clock::now();
  try {
    const SectorBasis basis =
        SectorBasis::enumerate(job.point.chain_length, job.local_dimension, job.point.charge);
    record.dimension = basis.dimension();

    Eigen::MatrixXd h;
    if (job.goe) {
      Rng rng(job.seed);
      h = sample_goe(basis.dimension(), rng);
    } else {
      ChainSpec spec;
      spec.chain_length = job.point.chain_length;
      spec.local_dimension = job.local_dimension;
      spec.coupling = 1.0;
      if (job.interaction)
        spec.interaction = *job.interaction;
      else
        spec.interaction = SpinHalfAngle{job.theta};
      record.spec_hash = chain_spec_hash(spec);
      h = build_sector_hamiltonian(spec, basis);
    }

    const EigenDecomposition eig = eig_symmetric(h);
    h.resize(0, 0);
    const TypicalityReport report = atypicality(eig, basis);
    record.delta_rms = report.delta_rms;
    record.f_deg = report.degeneracy.degeneracy_fraction;
    record.mean_gap = report.degeneracy.mean_gap;
    record.population_sum_residual = report.population_sum_residual;
    if (!job.spectra_dir.empty()) dump_spectrum(job, eig.eigenvalues);
  } catch (const CapacityError& e) {
    record.error = e.what();
  } catch (const EmptySectorError& e) {
    record.error = e.what();
  }
  record.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

std::size_t job_memory_bytes(const Job& job) {
  try {
    const std::int64_t dim =
        sector_dimension(job.point.chain_length, job.local_dimension, job.point.charge);
    const auto n = static_cast<std::size_t>(dim);
    return eig_memory_bytes(dim) + sizeof(double) * n * n +
           n * static_cast<std::size_t>(job.point.chain_length + 8);
  } catch (const CapacityError&) {
    return 0;  // the job will fail fast with an error record
  } catch (const EmptySectorError&) {
    return 0;
  }
}

std::vector<ResultRecord> run_jobs(const std::vector<Job>& jobs, int workers) {
  std::vector<ResultRecord> records(jobs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) records[i] = execute_job(jobs[i]);
    return records;
  }

  const std::size_t budget = memory_budget_bytes();
  std::vector<std::size_t> bytes(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) bytes[i] = job_memory_bytes(jobs[i]);

  std::atomic<std::size_t> next{0};
  std::mutex gate_mutex;
  std::condition_variable gate;
  std::size_t inflight = 0;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      {
        std::unique_lock lock(gate_mutex);
        gate.wait(lock, [&] { return inflight == 0 || inflight + bytes[i] <= budget; });
        inflight += bytes[i];
      }
      records[i] = execute_job(jobs[i]);
      {
        std::lock_guard lock(gate_mutex);
        inflight -= bytes[i];
      }
      gate.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const auto count = static_cast<std::size_t>(workers);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

void check_plan(const ExperimentPlan& plan) {
  if (plan.grid.empty()) throw std::invalid_argument("experiment plan has an empty grid");
  if (plan.samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (plan.workers < 1) throw std::invalid_argument("workers must be at least 1");
}

}  // namespace

std::vector<GridPoint> spin_half_family_grid(const std::string& family, int n_min, int n_max) {
  int offset = 0;
  if (family == "half")
    offset = 0;
  else if (family == "half-1")
    offset = 1;
  else if (family == "half-2")
    offset = 2;
  else
    throw std::invalid_argument("unknown spin-half family: " + family);

  std::vector<GridPoint> grid;
  for (int n = n_min; n <= n_max; ++n) {
    if (n % 2 == 0) continue;
    const int m = n / 2 - offset;
    if (m < 1) continue;
    grid.push_back({n, m});
  }
  return grid;
}

std::vector<GridPoint> fixed_m_grid(int m, int n_min, int n_max) {
  if (m < 1) throw std::invalid_argument("fixed M must be at least 1");
  std::vector<GridPoint> grid;
  for (int n = std::max(n_min, m + 1); n <= n_max; ++n) grid.push_back({n, m});
  return grid;
}

std::vector<GridPoint> spin_one_grid(int n_min, int n_max) {
  std::vector<GridPoint> grid;
  for (int n = std::max(n_min, 2); n <= n_max; ++n) grid.push_back({n, 0});
  return grid;
}

std::vector<ResultRecord> run_spin_half_sweep(const ExperimentPlan& plan) {
  check_plan(plan);
  std::vector<Job> jobs;
  jobs.reserve(plan.grid.size());
  for (const auto& point : plan.grid) {
    Job job;
    job.family = plan.family;
    job.point = point;
    job.local_dimension = 2;
    job.seed = plan.seed;
    job.theta = plan.theta;
    job.spectra_dir = plan.spectra_dir;
    jobs.push_back(std::move(job));
  }
  return run_jobs(jobs, plan.workers);
}

EnsembleResult run_goe_baseline(const ExperimentPlan& plan) {
  check_plan(plan);
  std::vector<Job> jobs;
  jobs.reserve(plan.grid.size() * static_cast<std::size_t>(plan.samples));
  for (const auto& point : plan.grid) {
    for (int sample = 0; sample < plan.samples; ++sample) {
      Job job;
      job.family = plan.family;
      job.point = point;
      job.local_dimension = 2;
      job.sample = sample;
      job.total_samples = plan.samples;
      job.goe = true;
      job.seed = derive_seed(plan.seed, plan.family, static_cast<std::uint64_t>(sample),
                             static_cast<std::uint64_t>(point.chain_length), point.charge);
      job.spectra_dir = plan.spectra_dir;
      jobs.push_back(std::move(job));
    }
  }
  EnsembleResult result;
  result.records = run_jobs(jobs, plan.workers);
  result.curve = aggregate(result.records);
  return result;
}

EnsembleResult run_spin_one_ensemble(const ExperimentPlan& plan) {
  check_plan(plan);
  std::vector<Job> jobs;
  jobs.reserve(plan.grid.size() * static_cast<std::size_t>(plan.samples));
  for (int sample = 0; sample < plan.samples; ++sample) {
    // One bond operator per sample, shared across every chain length.
    const std::uint64_t seed = derive_seed(plan.seed, plan.family, static_cast<std::uint64_t>(sample));
    Rng rng(seed);
    const SpinOneMatrix interaction = sample_spin_one_interaction(rng);
    for (const auto& point : plan.grid) {
      Job job;
      job.family = plan.family;
      job.point = point;
      job.local_dimension = 3;
      job.sample = sample;
      job.total_samples = plan.samples;
      job.seed = seed;
      job.interaction = interaction;
      job.spectra_dir = plan.spectra_dir;
      jobs.push_back(std::move(job));
    }
  }
  EnsembleResult result;
  result.records = run_jobs(jobs, plan.workers);
  result.curve = aggregate(result.records);
  return result;
}

}  // namespace typlab
