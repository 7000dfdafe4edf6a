#pragma once

// The optimizer loops (GAN-assisted and plain SPEA2 baseline), run records
// with convergence snapshots, and record-set comparison.

#include <cstdint>
#include <string>
#include <vector>

#include "gmoea/gan.hpp"
#include "gmoea/operators.hpp"
#include "gmoea/problems.hpp"

namespace gmoea {

// Canonical algorithm tags. "GMOEA*" runs the hybrid loop with gan_share 0
// (no GAN training at all); "GMOEA-" with gan_share 1 (all offspring from
// the generator).
extern const std::vector<std::string> kAlgorithmTags;
bool is_known_algorithm(const std::string& tag);
std::string algorithm_slug(const std::string& tag);  // file-system-safe name

struct RunConfig {
  std::string algorithm = "GMOEA";
  std::string problem = "IMF1";
  int D = 30;
  int N = 0;                 // 0 -> preset by objective count (100 / 105)
  long long budget = 0;      // 0 -> preset by D
  std::uint64_t seed = 1;
  long long trace_cadence = 0;  // FEs between snapshots; 0 -> N
  VariationConfig var;
  GanConfig gan;

  // Fill preset-dependent fields, validate, and force the ablation shares.
  void resolve();
};

struct Snapshot {
  long long fe = 0;
  double igd = 0.0;
  double hv = 0.0;
};

struct RunRecord {
  RunConfig config;
  std::uint64_t seed = 0;
  long long fe_used = 0;
  long long wall_ms = 0;
  std::vector<Snapshot> snapshots;
  std::vector<ObjectiveVector> final_objectives;
  std::vector<DecisionVector> final_decisions;
  std::vector<LossTraceRow> losses;  // in-memory only; not serialized
};

// Dispatch on config.algorithm.
RunRecord run_algorithm(const RunConfig& cfg);
RunRecord run_gmoea(const RunConfig& cfg);   // covers GMOEA, GMOEA*, GMOEA-
RunRecord run_spea2(const RunConfig& cfg);

enum class Indicator { Igd, Hv };

struct CompareResult {
  double median_a = 0.0;
  double median_b = 0.0;
  double p = 1.0;
  char symbol = '=';  // '+': a significantly better, '-': worse, '=': indistinguishable
};

// Wilcoxon comparison of final indicator values from two record sets; both
// sets must share problem, D and budget. IGD is better when lower, HV when
// higher.
CompareResult compare(const std::vector<RunRecord>& a, const std::vector<RunRecord>& b,
                      Indicator which, double alpha = 0.05);

double final_indicator(const RunRecord& rec, Indicator which);

}  // namespace gmoea
