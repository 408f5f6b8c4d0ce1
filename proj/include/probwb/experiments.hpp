#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "probwb/histogram.hpp"
#include "probwb/output.hpp"

namespace probwb {

/// Subcommands accepted by run_experiment.
const std::vector<std::string>& subcommand_names();

struct RunResult {
  nlohmann::json estimates;  // estimates and standard errors
  CsvTable csv;
  std::optional<Histogram> histogram;
  bool numeric_ok = true;  // false when a non-finite estimate was produced
};

/// Runs one subcommand. Per-trial work uses derive_stream(seed, trial) and
/// results are merged by trial index, so output does not depend on threads.
RunResult run_experiment(const RunConfig& cfg);

/// Summary object: run id, config echo, estimates, wall time, code version.
nlohmann::json summary_json(const RunConfig& cfg, const RunResult& result, double wall_seconds);

/// Writes <out>/<subcommand>.csv, .json and (when present) .svg.
void write_outputs(const RunConfig& cfg, const RunResult& result, double wall_seconds);

}  // namespace probwb
