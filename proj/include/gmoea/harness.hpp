#pragma once

// Experiment harness: strict JSON config parsing, byte-reproducible run
// records, the multi-run experiment driver, result tables and the CLI.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmoea/algorithms.hpp"

namespace gmoea {

// Strict parsers: unknown keys and wrong types raise ConfigError naming the
// offending key. `algorithm`, `problem`, `D` and `seed` are required in a run
// config; everything else falls back to the documented defaults.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);  // line-referenced parse errors

nlohmann::ordered_json run_config_to_json(const RunConfig& cfg);

// Records serialize with a fixed key order and, by default, wall_ms = 0 so
// that identical configs produce byte-identical files. `with_timing` writes
// the measured wall time instead (breaking reproducibility, opt-in).
nlohmann::ordered_json run_record_to_json(const RunRecord& rec, bool with_timing = false);
std::string serialize_record(const RunRecord& rec, bool with_timing = false);
RunRecord parse_run_record(const nlohmann::json& j);
RunRecord load_run_record(const std::string& path);

struct ExperimentPlan {
  struct Cell {
    std::string algorithm;
    std::string problem;
    int D = 30;
  };
  std::vector<Cell> cells;
  int runs = 20;
  std::uint64_t base_seed = 1;
  std::string out_dir = "records";
  int parallelism = 1;
  nlohmann::json overrides;  // optional partial run-config applied to every cell
};

ExperimentPlan parse_plan(const nlohmann::json& j);
ExperimentPlan load_plan(const std::string& path);

// Record path inside an experiment tree: <out>/<problem>_<D>/<slug>/run_<k>.json
std::string record_path(const std::string& out_dir, const ExperimentPlan::Cell& cell, int run);

// Runs every (cell, run) task; seeds are base_seed + run index. GMOEA_THREADS
// overrides the plan's parallelism. Completed-run log lines go to `log`.
void run_experiment(const ExperimentPlan& plan, std::ostream& log, bool with_timing = false);

// Build the run config of one experiment task (also used by tests to check
// that `run` and `experiment` agree byte-for-byte).
RunConfig cell_run_config(const ExperimentPlan& plan, const ExperimentPlan::Cell& cell, int run);

// Summaries over a record tree. `ref_algorithm` picks the Wilcoxon baseline
// (default GMOEA when present). Missing cells leave gaps, never errors.
void write_stats(const std::string& records_dir, const std::string& ref_algorithm,
                 std::ostream& csv, std::ostream& text);
void write_trace(const std::string& records_dir, std::ostream& csv);

// argv-style entry point used by both main() and the tests. Returns the
// process exit code: 0 ok, 1 config error, 2 runtime error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmoea
