#pragma once

// SPEA2 fitness assignment, environmental selection with distance-based
// truncation, and the real/fake split used to label GAN training data.

#include <cstddef>
#include <vector>

#include "gmoea/core.hpp"

namespace gmoea {

struct FitnessTable {
  std::vector<double> strength;  // number of members each one dominates
  std::vector<double> raw;       // sum of dominators' strengths
  std::vector<double> density;   // 1 / (sigma_k + 2), k-th nearest objective distance
  std::vector<double> fitness;   // raw + density; < 1 iff non-dominated
};

// Fitness of every member. k = floor(sqrt(n)) clamped to [1, n-1]; distances
// are Euclidean in objective space. A singleton population gets density 0.5.
FitnessTable spea2_fitness(const std::vector<ObjectiveVector>& objs);
FitnessTable spea2_fitness(const Population& pop);  // requires all evaluated; fills caches

// Iteratively removes the member with the lexicographically smallest sorted
// distance vector (nearest neighbor first; ties broken by the next distance,
// then by lowest index) until `keep` remain. Returns kept indices ascending.
std::vector<std::size_t> truncate_select(const std::vector<ObjectiveVector>& objs,
                                         std::size_t keep);

// SPEA2 environmental selection: keep the non-dominated members (fitness < 1);
// top up with the best dominated ones when short, truncate when over.
// Returns selected indices in stable (ascending) population order.
std::vector<std::size_t> environmental_select_indices(const std::vector<ObjectiveVector>& objs,
                                                      std::size_t n);
Population environmental_select(const Population& pop, std::size_t n);

// Real/fake labels for GAN training: the floor(N/2) environmental-selection
// winners are "real", the rest "fake". Decision vectors are stored normalized
// to the unit cube, in population order.
struct LabeledDataset {
  std::vector<DecisionVector> x_unit;
  std::vector<int> label;  // 1 = real, 0 = fake

  std::size_t size() const { return x_unit.size(); }
  std::size_t count_real() const;
};

LabeledDataset classify(const Population& pop, const BoxBounds& bounds);

}  // namespace gmoea
