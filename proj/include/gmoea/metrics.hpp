#pragma once

// Quality indicators (inverted generational distance, hypervolume) and the
// Wilcoxon rank-sum significance test used in result tables.

#include <vector>

#include "gmoea/core.hpp"

namespace gmoea {

// Mean over the reference set of the Euclidean distance to the nearest front
// member. Both sets must be non-empty and dimensionally consistent.
double igd(const std::vector<ObjectiveVector>& reference,
           const std::vector<ObjectiveVector>& front);

// Exact hypervolume dominated by `front` relative to `ref` (minimization;
// points not strictly below ref in every coordinate contribute nothing).
// M == 2 uses a sorted sweep, M == 3 slicing; other M -> UnsupportedError.
double hv(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref);

// Protocol used for reported hypervolume: normalize objectives by the sampled
// Pareto front's ideal/nadir, then measure against (1.1, ..., 1.1).
double normalized_hv(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ideal,
                     const ObjectiveVector& nadir);

void ideal_nadir(const std::vector<ObjectiveVector>& set, ObjectiveVector& ideal,
                 ObjectiveVector& nadir);

struct WilcoxonResult {
  double p = 1.0;
  double z = 0.0;
  bool significant = false;  // p < alpha
  bool a_lower = false;      // rank evidence that a's values run lower than b's
};

// Two-sided two-sample rank-sum test: mid-ranks for ties, normal
// approximation with tie and continuity corrections. Fully tied pools give
// p = 1.
WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b,
                                 double alpha = 0.05);

}  // namespace gmoea
