#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "typlab/experiments.hpp"
#include "typlab/fit.hpp"
#include "typlab/hamiltonian.hpp"
#include "typlab/records.hpp"
#include "typlab/rng.hpp"

namespace fs = std::filesystem;
using namespace typlab;

namespace {

// JSON config files mirror the command tree: nested objects select
// subcommands, keys match long option names, e.g.
// {"sweep": {"spin-one": {"n-min": 6, "samples": 21}}}. Values given on the
// command line win over the file.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return emit(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    const auto j = nlohmann::json::parse(input);
    if (!j.is_object()) throw CLI::FileError("config file must contain a JSON object");
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    return items;
  }

 private:
  static nlohmann::json emit(const CLI::App* app, bool default_also) {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames()[0];
      if (opt->count() == 1)
        j[name] = opt->results().front();
      else if (opt->count() > 1)
        j[name] = opt->results();
      else if (default_also && !opt->get_default_str().empty())
        j[name] = opt->get_default_str();
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      auto nested = emit(sub, default_also);
      if (!nested.empty()) j[sub->get_name()] = std::move(nested);
    }
    return j;
  }

  static void flatten(const nlohmann::json& node, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object()) {
        auto deeper = parents;
        deeper.push_back(key);
        flatten(value, std::move(deeper), items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& element : value) item.inputs.push_back(scalar(element));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }

  static std::string scalar(const nlohmann::json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
  }
};

struct SweepCommon {
  std::string out_dir;
  std::uint64_t seed = 0;
  int workers = 1;
  bool dump_spectra = false;
};

void add_common(CLI::App* cmd, SweepCommon& common) {
  cmd->add_option("--out", common.out_dir, "Output directory for the JSONL records")->required();
  cmd->add_option("--seed", common.seed, "Master seed for derived per-job seeds");
  cmd->add_option("--workers", common.workers, "Concurrent grid-point workers")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--dump-spectra", common.dump_spectra,
                "Also write one {family}_{N}_{charge}.spectrum.csv per sector");
}

void finish_sweep(const SweepCommon& common, const std::string& family,
                  std::span<const ResultRecord> records) {
  fs::create_directories(common.out_dir);
  const fs::path path = fs::path(common.out_dir) / (family + ".jsonl");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_jsonl(out, records);

  int failed = 0;
  for (const auto& r : records)
    if (!r.ok()) ++failed;
  std::cout << "wrote " << records.size() << " records to " << path.string();
  if (failed > 0) std::cout << " (" << failed << " failed grid points)";
  std::cout << '\n';
  for (const auto& r : records) {
    std::cout << "  " << r.family << " N=" << r.chain_length << " charge=" << r.charge
              << " D=" << r.dimension << " sample=" << r.sample;
    if (r.ok())
      std::cout << " delta_rms=" << format_double(*r.delta_rms)
                << " f_deg=" << format_double(*r.f_deg) << " (" << r.runtime_seconds << "s)";
    else
      std::cout << " error: " << r.error;
    std::cout << '\n';
  }
}

std::vector<GridPoint> parse_labels(const std::string& labels) {
  std::vector<GridPoint> grid;
  std::size_t pos = 0;
  while (pos < labels.size()) {
    const std::size_t comma = labels.find(',', pos);
    const std::string item = labels.substr(pos, comma == std::string::npos ? comma : comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--labels", "expected N:M pairs such as 8:4,10:5");
    grid.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (grid.empty()) throw CLI::ValidationError("--labels", "no labels given");
  return grid;
}

std::string fit_to_json(const ScalingFit& fit, std::span<const std::pair<double, double>> points) {
  std::string out = "{\"exponent\":" + format_double(fit.exponent) +
                    ",\"exponent_stderr\":" + format_double(fit.exponent_stderr) +
                    ",\"intercept\":" + format_double(fit.intercept) +
                    ",\"points_used\":" + std::to_string(fit.points_used) +
                    ",\"excluded_points\":[";
  for (std::size_t i = 0; i < fit.excluded_points.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(fit.excluded_points[i]);
  }
  out += "],\"points\":[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) out += ',';
    out += "{\"D\":" + format_double(points[i].first) +
           ",\"delta\":" + format_double(points[i].second) + "}";
  }
  out += "]}";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"typlab: how close spin-chain eigenstates sit to micro-canonical populations"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "JSON config file mirroring the command tree; flags override the file");
  app.config_formatter(std::make_shared<JsonConfig>());

  auto* sweep = app.add_subcommand("sweep", "Run one experiment family over a sector grid");
  sweep->require_subcommand(1);

  // sweep spin-half
  SweepCommon half_common;
  std::string half_family = "half";
  int half_n_min = 5, half_n_max = 13, half_fixed_m = 6;
  double half_theta = kDefaultTheta;
  auto* spin_half = sweep->add_subcommand(
      "spin-half", "Deterministic sweep over spin-1/2 sectors at a fixed interaction angle");
  spin_half->add_option("--family", half_family, "Sector family: half, half-1, half-2 or fixed-m")
      ->check(CLI::IsMember({"half", "half-1", "half-2", "fixed-m"}))
      ->capture_default_str();
  spin_half->add_option("--n-min", half_n_min, "Smallest chain length")->capture_default_str();
  spin_half->add_option("--n-max", half_n_max, "Largest chain length")->capture_default_str();
  spin_half->add_option("--theta", half_theta, "Interaction angle in radians")
      ->capture_default_str();
  spin_half->add_option("--fixed-m", half_fixed_m, "Up-spin count for the fixed-m family")
      ->capture_default_str();
  add_common(spin_half, half_common);

  // sweep spin-one
  SweepCommon one_common;
  int one_n_min = 6, one_n_max = 9, one_samples = 21;
  auto* spin_one = sweep->add_subcommand(
      "spin-one", "Random zero-diagonal bond operators on zero-magnetization spin-1 sectors");
  spin_one->add_option("--n-min", one_n_min, "Smallest chain length")->capture_default_str();
  spin_one->add_option("--n-max", one_n_max, "Largest chain length")->capture_default_str();
  spin_one->add_option("--samples", one_samples, "Independent bond operators")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(spin_one, one_common);

  // sweep goe
  SweepCommon goe_common;
  std::string goe_labels = "8:4,10:5,12:6,14:7";
  int goe_samples = 50;
  auto* goe = sweep->add_subcommand(
      "goe", "Random symmetric matrices measured against matching sector labels");
  goe->add_option("--labels", goe_labels, "Comma-separated N:M sector labels")
      ->capture_default_str();
  goe->add_option("--samples", goe_samples, "Matrices per label")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(goe, goe_common);

  // fit
  std::string fit_in, fit_out;
  bool exclude_first = false;
  auto* fit_cmd = app.add_subcommand("fit", "Power-law fit of per-dimension mean delta");
  fit_cmd->add_option("--in", fit_in, "Input JSONL records")->required();
  fit_cmd->add_flag("--exclude-first", exclude_first, "Drop the smallest-dimension point");
  fit_cmd->add_option("--out", fit_out, "Output JSON path (default: stdout)");

  // report
  std::string report_in, report_out;
  auto* report_cmd = app.add_subcommand("report", "Aggregate a results directory into CSV");
  report_cmd->add_option("--in", report_in, "Directory of JSONL record files")->required();
  report_cmd->add_option("--out", report_out, "Output CSV path (default: stdout)");

  // dump
  std::string dump_kind = "spin-half", dump_out;
  int dump_n = 4, dump_charge = 2;
  double dump_theta = kDefaultTheta;
  std::uint64_t dump_seed = 0;
  std::vector<double> dump_a;
  auto* dump_cmd =
      app.add_subcommand("dump", "Write one sector Hamiltonian as row-major float64 + JSON header");
  dump_cmd->add_option("--kind", dump_kind, "spin-half or spin-one")
      ->check(CLI::IsMember({"spin-half", "spin-one"}))
      ->capture_default_str();
  dump_cmd->add_option("--n", dump_n, "Chain length")->capture_default_str();
  dump_cmd->add_option("--charge", dump_charge, "Sector charge")->capture_default_str();
  dump_cmd->add_option("--theta", dump_theta, "Interaction angle (spin-half)")
      ->capture_default_str();
  dump_cmd->add_option("--seed", dump_seed, "Seed for a sampled spin-one bond operator");
  dump_cmd->add_option("--a", dump_a, "Explicit spin-one couplings a12 a13 a23")->expected(3);
  dump_cmd->add_option("--out", dump_out, "Output base path (.json and .bin)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (spin_half->parsed()) {
      ExperimentPlan plan;
      plan.family = half_family;
      plan.theta = half_theta;
      plan.seed = half_common.seed;
      plan.workers = half_common.workers;
      plan.grid = half_family == "fixed-m"
                      ? fixed_m_grid(half_fixed_m, half_n_min, half_n_max)
                      : spin_half_family_grid(half_family, half_n_min, half_n_max);
      if (half_common.dump_spectra) {
        plan.spectra_dir = half_common.out_dir;
        fs::create_directories(half_common.out_dir);
      }
      finish_sweep(half_common, plan.family, run_spin_half_sweep(plan));
    } else if (spin_one->parsed()) {
      ExperimentPlan plan;
      plan.family = "spin-one";
      plan.grid = spin_one_grid(one_n_min, one_n_max);
      plan.samples = one_samples;
      plan.seed = one_common.seed;
      plan.workers = one_common.workers;
      if (one_common.dump_spectra) {
        plan.spectra_dir = one_common.out_dir;
        fs::create_directories(one_common.out_dir);
      }
      finish_sweep(one_common, plan.family, run_spin_one_ensemble(plan).records);
    } else if (goe->parsed()) {
      ExperimentPlan plan;
      plan.family = "goe";
      plan.grid = parse_labels(goe_labels);
      plan.samples = goe_samples;
      plan.seed = goe_common.seed;
      plan.workers = goe_common.workers;
      if (goe_common.dump_spectra) {
        plan.spectra_dir = goe_common.out_dir;
        fs::create_directories(goe_common.out_dir);
      }
      finish_sweep(goe_common, plan.family, run_goe_baseline(plan).records);
    } else if (fit_cmd->parsed()) {
      const auto records = read_jsonl_file(fit_in);
      const auto rows = aggregate(records);
      std::vector<std::pair<double, double>> points;
      points.reserve(rows.size());
      for (const auto& row : rows)
        points.emplace_back(static_cast<double>(row.dimension), row.delta_mean);
      std::sort(points.begin(), points.end());
      std::vector<std::size_t> exclude;
      if (exclude_first) exclude.push_back(0);
      const auto fit = fit_power_law(points, exclude);
      const std::string json = fit_to_json(fit, points);
      if (fit_out.empty()) {
        std::cout << json << '\n';
      } else {
        std::ofstream out(fit_out);
        out << json << '\n';
      }
    } else if (report_cmd->parsed()) {
      std::vector<ResultRecord> records;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(report_in))
        if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& file : files) {
        auto batch = read_jsonl_file(file.string());
        records.insert(records.end(), batch.begin(), batch.end());
      }
      const auto rows = aggregate(records);
      if (report_out.empty()) {
        write_csv(std::cout, rows);
      } else {
        std::ofstream out(report_out);
        write_csv(out, rows);
      }
    } else if (dump_cmd->parsed()) {
      ChainSpec spec;
      spec.chain_length = dump_n;
      spec.local_dimension = dump_kind == "spin-half" ? 2 : 3;
      if (spec.local_dimension == 2) {
        spec.interaction = SpinHalfAngle{dump_theta};
      } else if (!dump_a.empty()) {
        spec.interaction = SpinOneMatrix{dump_a[0], dump_a[1], dump_a[2]};
      } else {
        Rng rng(dump_seed);
        spec.interaction = sample_spin_one_interaction(rng);
      }
      const auto basis = SectorBasis::enumerate(dump_n, spec.local_dimension, dump_charge);
      const Eigen::MatrixXd h = build_sector_hamiltonian(spec, basis);

      std::ofstream header(dump_out + ".json");
      header << "{\"N\":" << dump_n << ",\"local_dim\":" << spec.local_dimension
             << ",\"charge\":" << dump_charge << ",\"D\":" << basis.dimension()
             << ",\"dtype\":\"float64\",\"order\":\"row-major\"}\n";
      std::ofstream bin(dump_out + ".bin", std::ios::binary);
      for (Eigen::Index i = 0; i < h.rows(); ++i)
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
          const double v = h(i, j);
          bin.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
      std::cout << "wrote " << dump_out << ".json and " << dump_out << ".bin (D="
                << basis.dimension() << ")\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
