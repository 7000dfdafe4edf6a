#include "gmoea/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gmoea {

namespace {

double euclid(const ObjectiveVector& a, const ObjectiveVector& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

void check_objs(const std::vector<ObjectiveVector>& objs, const char* who) {
  if (objs.empty()) throw PreconditionError(std::string(who) + ": empty population");
  const std::size_t m = objs.front().size();
  if (m == 0) throw PreconditionError(std::string(who) + ": empty objective vectors");
  for (const auto& f : objs)
    if (f.size() != m) throw DimensionError(std::string(who) + ": ragged objective vectors");
}

}  // namespace

FitnessTable spea2_fitness(const std::vector<ObjectiveVector>& objs) {
  check_objs(objs, "spea2_fitness");
  const std::size_t n = objs.size();
  FitnessTable t;
  t.strength.assign(n, 0.0);
  t.raw.assign(n, 0.0);
  t.density.assign(n, 0.0);
  t.fitness.assign(n, 0.0);

  std::vector<std::vector<bool>> dom(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dominates(objs[i], objs[j])) {
        dom[i][j] = true;
        t.strength[i] += 1.0;
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dom[j][i]) t.raw[i] += t.strength[j];

  if (n == 1) {
    t.density[0] = 0.5;  // no neighbours: treat sigma_k as 0
  } else {
    const std::size_t k =
        std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::sqrt(
                                                           static_cast<double>(n))),
                                                       n - 1));
    std::vector<double> dist;
    dist.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      dist.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) dist.push_back(euclid(objs[i], objs[j]));
      std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
      t.density[i] = 1.0 / (dist[k - 1] + 2.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) t.fitness[i] = t.raw[i] + t.density[i];
  return t;
}

FitnessTable spea2_fitness(const Population& pop) {
  std::vector<ObjectiveVector> objs;
  objs.reserve(pop.size());
  for (const auto& ind : pop) {
    if (!ind.evaluated()) throw PreconditionError("spea2_fitness: unevaluated member");
    objs.push_back(ind.f);
  }
  return spea2_fitness(objs);
}

std::vector<std::size_t> truncate_select(const std::vector<ObjectiveVector>& objs,
                                         std::size_t keep) {
  check_objs(objs, "truncate_select");
  if (keep > objs.size())
    throw PreconditionError("truncate_select: keep " + std::to_string(keep) + " > population " +
                            std::to_string(objs.size()));
  std::vector<std::size_t> alive(objs.size());
  std::iota(alive.begin(), alive.end(), 0);

  while (alive.size() > keep) {
    // Sorted distance vector of each survivor to the other survivors;
    // remove the lexicographic minimum (nearest-neighbor tie chain).
    std::vector<std::vector<double>> dists(alive.size());
    for (std::size_t a = 0; a < alive.size(); ++a) {
      dists[a].reserve(alive.size() - 1);
      for (std::size_t b = 0; b < alive.size(); ++b)
        if (a != b) dists[a].push_back(euclid(objs[alive[a]], objs[alive[b]]));
      std::sort(dists[a].begin(), dists[a].end());
    }
    std::size_t victim = 0;
    for (std::size_t a = 1; a < alive.size(); ++a)
      if (dists[a] < dists[victim]) victim = a;  // lexicographic; ties keep lowest index
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return alive;
}

std::vector<std::size_t> environmental_select_indices(const std::vector<ObjectiveVector>& objs,
                                                      std::size_t n) {
  check_objs(objs, "environmental_select");
  if (n == 0) throw PreconditionError("environmental_select: n must be positive");
  if (n > objs.size())
    throw PreconditionError("environmental_select: requested " + std::to_string(n) +
                            " from population of " + std::to_string(objs.size()));
  const FitnessTable t = spea2_fitness(objs);

  std::vector<std::size_t> nondom;
  for (std::size_t i = 0; i < objs.size(); ++i)
    if (t.fitness[i] < 1.0) nondom.push_back(i);

  if (nondom.size() == n) return nondom;

  if (nondom.size() < n) {
    // Top up with the best-fitness members overall (stable by index).
    std::vector<std::size_t> order(objs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return t.fitness[a] < t.fitness[b]; });
    order.resize(n);
    std::sort(order.begin(), order.end());
    return order;
  }

  // Too many non-dominated members: distance-based truncation among them.
  std::vector<ObjectiveVector> sub;
  sub.reserve(nondom.size());
  for (std::size_t i : nondom) sub.push_back(objs[i]);
  std::vector<std::size_t> kept_local = truncate_select(sub, n);
  std::vector<std::size_t> kept;
  kept.reserve(n);
  for (std::size_t k : kept_local) kept.push_back(nondom[k]);
  return kept;
}

Population environmental_select(const Population& pop, std::size_t n) {
  std::vector<ObjectiveVector> objs;
  objs.reserve(pop.size());
  for (const auto& ind : pop) {
    if (!ind.evaluated()) throw PreconditionError("environmental_select: unevaluated member");
    objs.push_back(ind.f);
  }
  const FitnessTable t = spea2_fitness(objs);
  std::vector<std::size_t> idx = environmental_select_indices(objs, n);
  Population out;
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    out.push_back(pop[i]);
    out.back().fitness = t.fitness[i];
  }
  return out;
}

std::size_t LabeledDataset::count_real() const {
  std::size_t c = 0;
  for (int l : label) c += static_cast<std::size_t>(l == 1);
  return c;
}

LabeledDataset classify(const Population& pop, const BoxBounds& bounds) {
  if (pop.size() < 2) throw PreconditionError("classify: population must have >= 2 members");
  std::vector<ObjectiveVector> objs;
  objs.reserve(pop.size());
  for (const auto& ind : pop) {
    if (!ind.evaluated()) throw PreconditionError("classify: unevaluated member");
    objs.push_back(ind.f);
  }
  const std::size_t n_real = pop.size() / 2;  // 52/53 split at the N=105 preset
  std::vector<std::size_t> winners = environmental_select_indices(objs, n_real);

  LabeledDataset ds;
  ds.x_unit.reserve(pop.size());
  ds.label.assign(pop.size(), 0);
  for (std::size_t i : winners) ds.label[i] = 1;
  for (const auto& ind : pop) ds.x_unit.push_back(to_unit(ind.x, bounds));
  return ds;
}

}  // namespace gmoea
