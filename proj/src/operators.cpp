#include "gmoea/operators.hpp"

#include <algorithm>
#include <cmath>

namespace gmoea {

double sbx_spread(double u, double eta) {
  if (u <= 0.5) return std::pow(2.0 * u, 1.0 / (eta + 1.0));
  return std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
}

namespace {

void check_in_bounds(const DecisionVector& x, const BoxBounds& b, const char* who) {
  if (x.size() != b.dim())
    throw DimensionError(std::string(who) + ": dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < b.lower[i] || x[i] > b.upper[i])
      throw RangeError(std::string(who) + ": parent variable " + std::to_string(i) +
                       " outside bounds");
}

}  // namespace

std::pair<DecisionVector, DecisionVector> sbx(const DecisionVector& p1, const DecisionVector& p2,
                                              const BoxBounds& bounds, double eta_c, double p_c,
                                              RngStream& rng) {
  bounds.validate();
  check_in_bounds(p1, bounds, "sbx");
  check_in_bounds(p2, bounds, "sbx");
  DecisionVector c1 = p1, c2 = p2;
  if (rng.u01() <= p_c) {
    for (std::size_t i = 0; i < p1.size(); ++i) {
      if (rng.u01() > 0.5) continue;  // variable kept as-is on both children
      const double beta = sbx_spread(rng.u01(), eta_c);
      c1[i] = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
      c2[i] = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
    }
  }
  return {clamp(c1, bounds), clamp(c2, bounds)};
}

DecisionVector polynomial_mutation(const DecisionVector& x, const BoxBounds& bounds, double eta_m,
                                   double p_m, RngStream& rng) {
  bounds.validate();
  check_in_bounds(x, bounds, "polynomial_mutation");
  DecisionVector out = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rng.u01() >= p_m) continue;
    const double lo = bounds.lower[i], hi = bounds.upper[i];
    const double span = hi - lo;
    if (span == 0.0) continue;
    const double u = rng.u01();
    double dq;
    if (u < 0.5) {
      const double d1 = (out[i] - lo) / span;
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta_m + 1.0);
      dq = std::pow(val, 1.0 / (eta_m + 1.0)) - 1.0;
    } else {
      const double d2 = (hi - out[i]) / span;
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta_m + 1.0);
      dq = 1.0 - std::pow(val, 1.0 / (eta_m + 1.0));
    }
    out[i] = std::min(hi, std::max(lo, out[i] + dq * span));
  }
  return out;
}

std::size_t binary_tournament(const std::vector<double>& fitness, RngStream& rng) {
  if (fitness.empty()) throw PreconditionError("binary_tournament: empty fitness table");
  const std::size_t a = static_cast<std::size_t>(rng.below(fitness.size()));
  const std::size_t b = static_cast<std::size_t>(rng.below(fitness.size()));
  return fitness[b] < fitness[a] ? b : a;  // ties -> first draw
}

Population hybrid_reproduce(const Population& pop, const FitnessTable& fit, const GanPair* gan,
                            const LatentModel* model, const VariationConfig& var,
                            const BoxBounds& bounds, RngStream& rng,
                            std::vector<OffspringOrigin>* origins) {
  if (pop.empty()) throw PreconditionError("hybrid_reproduce: empty population");
  if (fit.fitness.size() != pop.size())
    throw PreconditionError("hybrid_reproduce: fitness table does not match population");
  if (var.gan_share > 0.0 && (gan == nullptr || model == nullptr))
    throw PreconditionError("hybrid_reproduce: gan_share > 0 requires a trained GAN and latent model");

  const int D = static_cast<int>(bounds.dim());
  const double p_m = var.resolved_p_m(D);
  Population off;
  off.reserve(pop.size());
  if (origins) origins->clear();

  for (std::size_t slot = 0; slot < pop.size(); ++slot) {
    if (rng.u01() < var.gan_share) {
      DecisionVector x = generate_candidates(*gan, *model, 1, bounds, rng).front();
      if (var.pm_on_gan) x = polynomial_mutation(x, bounds, var.eta_m, p_m, rng);
      off.push_back(Individual{std::move(x), {}, std::nullopt});
      if (origins) origins->push_back(OffspringOrigin::Gan);
    } else {
      const std::size_t pa = binary_tournament(fit.fitness, rng);
      const std::size_t pb = binary_tournament(fit.fitness, rng);
      auto [c1, c2] = sbx(pop[pa].x, pop[pb].x, bounds, var.eta_c, var.p_c, rng);
      DecisionVector kept = rng.u01() < 0.5 ? std::move(c1) : std::move(c2);
      kept = polynomial_mutation(kept, bounds, var.eta_m, p_m, rng);
      off.push_back(Individual{std::move(kept), {}, std::nullopt});
      if (origins) origins->push_back(OffspringOrigin::Genetic);
    }
  }
  return off;
}

}  // namespace gmoea
