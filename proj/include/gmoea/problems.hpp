#pragma once

// The ten-problem benchmark suite (IMF1..IMF10) with its Pareto-front
// samplers, plus population evaluation against the FE budget counter.
//
// All ten problems share a variable-linkage construction: the first one or
// two variables are position variables on [0,1]; the remaining distance
// variables live on [0,10] and enter the objectives through x_i/10 so the
// Pareto set is a line (or curve) cutting diagonally across the normalized
// decision cube. IMF1-IMF4 use the linear linkage x_i/10 - x_1, IMF5-IMF8
// the nonlinear (x_i/10)^2 - x_1, and IMF9/IMF10 wrap the linear linkage in
// Griewank / Rastrigin landscapes. IMF4 and IMF8 are tri-objective; all
// others bi-objective.

#include <string>
#include <vector>

#include "gmoea/core.hpp"

namespace gmoea {

enum class ProblemId {
  IMF1, IMF2, IMF3, IMF4, IMF5, IMF6, IMF7, IMF8, IMF9, IMF10,
};

struct ProblemSpec {
  ProblemId id{};
  std::string name;
  int D = 0;  // decision dimension
  int M = 0;  // objective dimension (2, or 3 for IMF4/IMF8)
  BoxBounds bounds;
};

// All suite names in canonical order.
const std::vector<std::string>& problem_names();

// Dimension presets and their coupled evaluation budgets.
const std::vector<int>& dimension_presets();            // {30, 50, 100, 200}
long long budget_for_dimension(int D);                  // throws LookupError off-preset
int default_population_size(int M);                     // 100 for M=2, 105 for M=3

// name in {IMF1..IMF10}; D >= 3. Throws LookupError / RangeError.
ProblemSpec make_problem(const std::string& name, int D);

// Evaluate one in-bounds decision vector. Throws RangeError when x leaves the
// box, DimensionError on length mismatch. Bitwise deterministic.
ObjectiveVector objective_eval(const ProblemSpec& spec, const DecisionVector& x);

// Deterministic, evenly spread Pareto-front sample. For M=2 the front is a
// curve and the sample has exactly `target` points (uniform grid over the
// front parameter). For M=3 the front is the unit-sphere octant and the
// sample is a simplex-lattice direction grid with cardinality k(k+1)/2
// closest to `target`.
std::vector<ObjectiveVector> sample_pf(const ProblemSpec& spec, int target);

// Evaluates every not-yet-evaluated member, debiting the counter. The budget
// check happens up front (atomic): if the remaining budget cannot cover all
// unevaluated members a BudgetError identifies the shortfall and nothing is
// evaluated.
void evaluate_population(const ProblemSpec& spec, Population& pop, FeCounter& fe);

// Uniform random population inside the box.
Population random_population(const ProblemSpec& spec, int n, RngStream& rng);

// Smallest attainable first objective of the oscillatory problems IMF3/IMF7
// (the other problems attain 0). Solved numerically once, to full precision.
double zdt6_style_f1_min();

}  // namespace gmoea
