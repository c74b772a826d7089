#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "typlab/chain.hpp"

namespace typlab {

/// One grid point of one experiment: the typicality report fields plus the
/// plan identity. Serializes to a single JSON object per line; floats carry
/// 17 significant digits so records round-trip losslessly. Failed grid
/// points keep their coordinates and an error message instead of results.
struct ResultRecord {
  std::string family;
  int chain_length = 0;
  int local_dimension = 2;
  int charge = 0;
  std::int64_t dimension = 0;
  int sample = 0;
  std::uint64_t seed = 0;
  std::uint64_t spec_hash = 0;
  std::optional<double> theta;             // spin-1/2 families
  std::optional<SpinOneMatrix> interaction;  // spin-1 families
  std::optional<double> delta_rms;
  std::optional<double> f_deg;
  std::optional<double> mean_gap;
  std::optional<double> population_sum_residual;
  double runtime_seconds = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

std::string to_json_line(const ResultRecord& record);
ResultRecord record_from_json(const std::string& line);

void write_jsonl(std::ostream& out, std::span<const ResultRecord> records);
std::vector<ResultRecord> read_jsonl(std::istream& in);
std::vector<ResultRecord> read_jsonl_file(const std::string& path);

/// Per-(family, N, charge) aggregate over samples; failed records are
/// skipped. Standard deviation uses the n-1 denominator and is therefore
/// undefined for a single sample (left empty in the CSV).
struct AggregateRow {
  std::string family;
  int chain_length = 0;
  int charge = 0;
  std::int64_t dimension = 0;
  double delta_mean = 0.0;
  std::optional<double> delta_std;
  std::optional<double> delta_stderr;
  double fdeg_mean = 0.0;
  int samples = 0;
};

std::vector<AggregateRow> aggregate(std::span<const ResultRecord> records);

/// CSV with columns family,N,charge,D,delta_mean,delta_std,delta_stderr,
/// fdeg_mean,samples.
void write_csv(std::ostream& out, std::span<const AggregateRow> rows);

/// Formats a double with 17 significant digits (lossless round-trip).
std::string format_double(double value);

}  // namespace typlab
