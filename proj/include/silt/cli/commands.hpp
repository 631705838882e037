#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "silt/cli/config.hpp"
#include "silt/region.hpp"

namespace silt::cli {

enum ExitCode : int { ok = 0, io_failure = 1, invalid_config = 2, numerical_failure = 3, replay_mismatch = 4 };

/// "D", "D_kappa:<kappa>" or "A:<j>:<k>" (dyadic square scaled to the horizon).
Region parse_region(const std::string& text, double horizon);

/// Runs one command into out_dir (created if missing), writing its outputs and
/// manifest.json. A short summary goes to `out`; failures print one JSON error
/// record to `err` and return the exit code.
int run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

/// Re-runs a manifest into out_dir and compares checksums.
int replay(const std::filesystem::path& manifest, const std::filesystem::path& out_dir, std::ostream& out,
           std::ostream& err);

struct SweepRow {
  std::size_t grid_index = 0;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  double value = 0.0;
};

struct SweepAggregate {
  std::size_t grid_index = 0;
  std::map<std::string, double> params;
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 for a single replicate
  double ci_low = 0.0;    // 95% normal interval for the mean
  double ci_high = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (grid index, seed)
  std::vector<SweepAggregate> aggregates;
};

/// Cartesian product of every "grid.<key>" list over the estimate fields;
/// replicate r uses seed + r. Refuses (ConfigError on "budget") before any
/// work when points x replicates exceeds the budget.
SweepResult sweep(const RunConfig& config);

/// Writes sweep.csv: rows then aggregate rows.
void write_sweep_csv(const SweepResult& result, std::ostream& os);

}  // namespace silt::cli
