#pragma once

// Genetic variation: simulated binary crossover, polynomial mutation, binary
// tournament mating selection, and the hybrid offspring generator that mixes
// GAN sampling with the genetic pipeline.

#include <utility>
#include <vector>

#include "gmoea/core.hpp"
#include "gmoea/gan.hpp"
#include "gmoea/selection.hpp"

namespace gmoea {

// Spread factor for a uniform draw u; beta(0.5) == 1 exactly.
double sbx_spread(double u, double eta);

// Mean-preserving SBX. With probability p_c the pair is crossed; each
// variable then mixes with probability 0.5 (otherwise both children copy the
// parents). Children are clamped to the bounds afterwards.
std::pair<DecisionVector, DecisionVector> sbx(const DecisionVector& p1, const DecisionVector& p2,
                                              const BoxBounds& bounds, double eta_c, double p_c,
                                              RngStream& rng);

// Bounded polynomial mutation, per-variable probability p_m.
DecisionVector polynomial_mutation(const DecisionVector& x, const BoxBounds& bounds, double eta_m,
                                   double p_m, RngStream& rng);

// Index of the winner of one binary tournament on SPEA2 fitness (lower is
// better; ties go to the first draw).
std::size_t binary_tournament(const std::vector<double>& fitness, RngStream& rng);

struct VariationConfig {
  double eta_c = 20.0;
  double p_c = 1.0;
  double eta_m = 20.0;
  double p_m = -1.0;        // < 0 means 1/D
  double gan_share = 0.5;   // probability an offspring slot uses the GAN path
  bool pm_on_gan = false;   // also mutate GAN-path offspring

  double resolved_p_m(int D) const { return p_m < 0.0 ? 1.0 / D : p_m; }
};

enum class OffspringOrigin { Genetic = 0, Gan = 1 };

// N offspring, slot by slot: with probability gan_share sample the generator,
// otherwise tournament -> SBX (keep one child uniformly) -> mutation.
// `gan`/`model` may be null when gan_share == 0.
Population hybrid_reproduce(const Population& pop, const FitnessTable& fit, const GanPair* gan,
                            const LatentModel* model, const VariationConfig& var,
                            const BoxBounds& bounds, RngStream& rng,
                            std::vector<OffspringOrigin>* origins = nullptr);

}  // namespace gmoea
