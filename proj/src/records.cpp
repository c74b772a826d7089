#include "typlab/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace typlab {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

void append_field(std::string& out, const char* key, const std::string& value, bool quote) {
  if (out.back() != '{') out += ',';
  out += '"';
  out += key;
  out += "\":";
  if (quote) {
    out += '"';
    for (char c : value) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
  } else {
    out += value;
  }
}

void append_number(std::string& out, const char* key, double value) {
  append_field(out, key, format_double(value), false);
}

}  // namespace

std::string to_json_line(const ResultRecord& r) {
  std::string out = "{";
  append_field(out, "family", r.family, true);
  append_field(out, "N", std::to_string(r.chain_length), false);
  append_field(out, "local_dim", std::to_string(r.local_dimension), false);
  append_field(out, "charge", std::to_string(r.charge), false);
  append_field(out, "D", std::to_string(r.dimension), false);
  append_field(out, "sample", std::to_string(r.sample), false);
  append_field(out, "seed", std::to_string(r.seed), false);
  append_field(out, "spec_hash", std::to_string(r.spec_hash), false);
  if (r.theta) append_number(out, "theta", *r.theta);
  if (r.interaction) {
    append_number(out, "a12", r.interaction->a12);
    append_number(out, "a13", r.interaction->a13);
    append_number(out, "a23", r.interaction->a23);
  }
  if (r.delta_rms) append_number(out, "delta_rms", *r.delta_rms);
  if (r.f_deg) append_number(out, "f_deg", *r.f_deg);
  if (r.mean_gap) append_number(out, "mean_gap", *r.mean_gap);
  if (r.population_sum_residual) append_number(out, "sum_residual", *r.population_sum_residual);
  append_number(out, "runtime_seconds", r.runtime_seconds);
  if (!r.error.empty()) append_field(out, "error", r.error, true);
  out += '}';
  return out;
}

ResultRecord record_from_json(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  ResultRecord r;
  r.family = j.at("family").get<std::string>();
  r.chain_length = j.at("N").get<int>();
  r.local_dimension = j.at("local_dim").get<int>();
  r.charge = j.at("charge").get<int>();
  r.dimension = j.at("D").get<std::int64_t>();
  r.sample = j.value("sample", 0);
  r.seed = j.value("seed", std::uint64_t{0});
  r.spec_hash = j.value("spec_hash", std::uint64_t{0});
  if (j.contains("theta")) r.theta = j["theta"].get<double>();
  if (j.contains("a12"))
    r.interaction = SpinOneMatrix{j["a12"].get<double>(), j["a13"].get<double>(),
                                  j["a23"].get<double>()};
  if (j.contains("delta_rms")) r.delta_rms = j["delta_rms"].get<double>();
  if (j.contains("f_deg")) r.f_deg = j["f_deg"].get<double>();
  if (j.contains("mean_gap")) r.mean_gap = j["mean_gap"].get<double>();
  if (j.contains("sum_residual")) r.population_sum_residual = j["sum_residual"].get<double>();
  r.runtime_seconds = j.value("runtime_seconds", 0.0);
  r.error = j.value("error", std::string{});
  return r;
}

void write_jsonl(std::ostream& out, std::span<const ResultRecord> records) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::vector<ResultRecord> read_jsonl(std::istream& in) {
  std::vector<ResultRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json(line));
  }
  return records;
}

std::vector<ResultRecord> read_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_jsonl(in);
}

std::vector<AggregateRow> aggregate(std::span<const ResultRecord> records) {
  if (records.empty()) throw std::invalid_argument("nothing to aggregate");
  using Key = std::tuple<std::string, std::int64_t, int, int>;
  std::map<Key, std::vector<const ResultRecord*>> groups;
  for (const auto& r : records) {
    if (!r.ok()) continue;
    groups[{r.family, r.dimension, r.chain_length, r.charge}].push_back(&r);
  }

  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, members] : groups) {
    AggregateRow row;
    row.family = std::get<0>(key);
    row.dimension = std::get<1>(key);
    row.chain_length = std::get<2>(key);
    row.charge = std::get<3>(key);
    row.samples = static_cast<int>(members.size());

    double delta_sum = 0.0, fdeg_sum = 0.0;
    for (const auto* r : members) {
      delta_sum += r->delta_rms.value_or(0.0);
      fdeg_sum += r->f_deg.value_or(0.0);
    }
    row.delta_mean = delta_sum / row.samples;
    row.fdeg_mean = fdeg_sum / row.samples;

    if (row.samples > 1) {
      double ss = 0.0;
      for (const auto* r : members) {
        const double d = r->delta_rms.value_or(0.0) - row.delta_mean;
        ss += d * d;
      }
      row.delta_std = std::sqrt(ss / (row.samples - 1));
      row.delta_stderr = *row.delta_std / std::sqrt(static_cast<double>(row.samples));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const AggregateRow> rows) {
  out << "family,N,charge,D,delta_mean,delta_std,delta_stderr,fdeg_mean,samples\n";
  for (const auto& row : rows) {
    out << row.family << ',' << row.chain_length << ',' << row.charge << ',' << row.dimension
        << ',' << format_double(row.delta_mean) << ','
        << (row.delta_std ? format_double(*row.delta_std) : std::string{}) << ','
        << (row.delta_stderr ? format_double(*row.delta_stderr) : std::string{}) << ','
        << format_double(row.fdeg_mean) << ',' << row.samples << '\n';
  }
}

}  // namespace typlab
