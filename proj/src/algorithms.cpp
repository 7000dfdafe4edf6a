#include "gmoea/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "gmoea/metrics.hpp"

namespace gmoea {

const std::vector<std::string> kAlgorithmTags = {"GMOEA", "SPEA2", "GMOEA*", "GMOEA-"};

bool is_known_algorithm(const std::string& tag) {
  return std::find(kAlgorithmTags.begin(), kAlgorithmTags.end(), tag) != kAlgorithmTags.end();
}

std::string algorithm_slug(const std::string& tag) {
  if (tag == "GMOEA*") return "GMOEA_star";
  if (tag == "GMOEA-") return "GMOEA_minus";
  return tag;
}

void RunConfig::resolve() {
  if (!is_known_algorithm(algorithm))
    throw ConfigError("unknown algorithm '" + algorithm +
                      "' (expected GMOEA, SPEA2, GMOEA* or GMOEA-)");
  const ProblemSpec spec = make_problem(problem, D);  // validates name and D
  if (N == 0) N = default_population_size(spec.M);
  if (N < 2) throw ConfigError("population size must be >= 2, got " + std::to_string(N));
  if (budget == 0) budget = budget_for_dimension(D);
  if (budget < N)
    throw ConfigError("budget " + std::to_string(budget) +
                      " cannot cover the initial population of " + std::to_string(N));
  if (trace_cadence == 0) trace_cadence = N;
  if (trace_cadence < 1) throw ConfigError("trace cadence must be positive");
  if (algorithm == "GMOEA*") var.gan_share = 0.0;
  if (algorithm == "GMOEA-") var.gan_share = 1.0;
  if (var.gan_share < 0.0 || var.gan_share > 1.0)
    throw ConfigError("gan_share must lie in [0, 1]");
  if (gan.batch < 1) throw ConfigError("gan batch size must be positive");
  if (gan.epochs < 0) throw ConfigError("gan epochs must be >= 0");
  if (var.p_c < 0.0 || var.p_c > 1.0) throw ConfigError("p_c must lie in [0, 1]");
  if (var.p_m > 1.0) throw ConfigError("p_m must lie in [0, 1] (or negative for 1/D)");
}

namespace {

// Stream ids for the independent RNG roles of one run.
enum StreamId : std::uint64_t { kInitStream = 0, kGanInitStream = 1, kTrainStream = 2,
                                kVariationStream = 3 };

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Runs from different experiment cells stay decorrelated even when their
// numeric seeds collide: the cell identity is folded into the stream seed.
std::uint64_t run_seed(const RunConfig& cfg) {
  return cfg.seed ^ fnv1a(cfg.problem + "|" + std::to_string(cfg.D) + "|" + cfg.algorithm);
}

struct IndicatorContext {
  std::vector<ObjectiveVector> reference;
  ObjectiveVector ideal, nadir;
};

IndicatorContext make_indicator_context(const ProblemSpec& spec) {
  IndicatorContext ctx;
  ctx.reference = sample_pf(spec, 10000);
  ideal_nadir(ctx.reference, ctx.ideal, ctx.nadir);
  return ctx;
}

std::vector<ObjectiveVector> nondominated_front(const Population& pop) {
  std::vector<ObjectiveVector> front;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pop.size() && !dominated; ++j)
      if (j != i && dominates(pop[j].f, pop[i].f)) dominated = true;
    if (!dominated) front.push_back(pop[i].f);
  }
  return front;
}

void take_snapshot(const Population& pop, const IndicatorContext& ctx, long long fe,
                   std::vector<Snapshot>& out) {
  const std::vector<ObjectiveVector> front = nondominated_front(pop);
  Snapshot s;
  s.fe = fe;
  s.igd = igd(ctx.reference, front);
  s.hv = normalized_hv(front, ctx.ideal, ctx.nadir);
  out.push_back(s);
}

void finalize_record(RunRecord& rec, const Population& pop,
                     std::chrono::steady_clock::time_point t0, const FeCounter& fe) {
  rec.fe_used = fe.used;
  rec.final_objectives.reserve(pop.size());
  rec.final_decisions.reserve(pop.size());
  for (const auto& ind : pop) {
    rec.final_objectives.push_back(ind.f);
    rec.final_decisions.push_back(ind.x);
  }
  rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
}

}  // namespace

RunRecord run_gmoea(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  cfg.resolve();
  const auto t0 = std::chrono::steady_clock::now();
  const ProblemSpec spec = make_problem(cfg.problem, cfg.D);
  const IndicatorContext ctx = make_indicator_context(spec);
  const std::uint64_t rs = run_seed(cfg);
  RngStream rng_init(rs, kInitStream);
  RngStream rng_gan_init(rs, kGanInitStream);
  RngStream rng_train(rs, kTrainStream);
  RngStream rng_var(rs, kVariationStream);

  RunRecord rec;
  rec.config = cfg;
  rec.seed = cfg.seed;

  FeCounter fe{cfg.budget, 0};
  Population pop = random_population(spec, cfg.N, rng_init);
  evaluate_population(spec, pop, fe);

  const bool use_gan = cfg.var.gan_share > 0.0;
  GanPair gan = gan_init(cfg.D, cfg.gan, rng_gan_init);

  long long last_snap = fe.used;
  take_snapshot(pop, ctx, fe.used, rec.snapshots);

  int generation = 0;
  while (fe.remaining() >= cfg.N) {
    const FitnessTable fit = spea2_fitness(pop);

    LatentModel model;
    if (use_gan) {
      const LabeledDataset data = classify(pop, spec.bounds);
      model = fit_latent_model(data);
      train(gan, data, model, generation, rng_train, &rec.losses);
      model = fit_latent_model(data);  // refreshed before offspring sampling
    }

    Population off = hybrid_reproduce(pop, fit, use_gan ? &gan : nullptr,
                                      use_gan ? &model : nullptr, cfg.var, spec.bounds, rng_var);
    evaluate_population(spec, off, fe);

    Population unioned = pop;
    unioned.insert(unioned.end(), off.begin(), off.end());
    pop = environmental_select(unioned, static_cast<std::size_t>(cfg.N));

    if (fe.used - last_snap >= cfg.trace_cadence) {
      take_snapshot(pop, ctx, fe.used, rec.snapshots);
      last_snap = fe.used;
    }
    ++generation;
  }
  if (rec.snapshots.empty() || rec.snapshots.back().fe != fe.used)
    take_snapshot(pop, ctx, fe.used, rec.snapshots);

  finalize_record(rec, pop, t0, fe);
  return rec;
}

RunRecord run_spea2(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  cfg.resolve();
  const auto t0 = std::chrono::steady_clock::now();
  const ProblemSpec spec = make_problem(cfg.problem, cfg.D);
  const IndicatorContext ctx = make_indicator_context(spec);
  const std::uint64_t rs = run_seed(cfg);
  RngStream rng_init(rs, kInitStream);
  RngStream rng_var(rs, kVariationStream);

  RunRecord rec;
  rec.config = cfg;
  rec.seed = cfg.seed;

  FeCounter fe{cfg.budget, 0};
  Population pop = random_population(spec, cfg.N, rng_init);
  evaluate_population(spec, pop, fe);

  const double p_m = cfg.var.resolved_p_m(cfg.D);
  long long last_snap = fe.used;
  take_snapshot(pop, ctx, fe.used, rec.snapshots);

  while (fe.remaining() >= cfg.N) {
    const FitnessTable fit = spea2_fitness(pop);
    Population off;
    off.reserve(static_cast<std::size_t>(cfg.N));
    while (static_cast<int>(off.size()) < cfg.N) {
      const std::size_t pa = binary_tournament(fit.fitness, rng_var);
      const std::size_t pb = binary_tournament(fit.fitness, rng_var);
      auto [c1, c2] = sbx(pop[pa].x, pop[pb].x, spec.bounds, cfg.var.eta_c, cfg.var.p_c, rng_var);
      off.push_back(Individual{polynomial_mutation(c1, spec.bounds, cfg.var.eta_m, p_m, rng_var),
                               {}, std::nullopt});
      if (static_cast<int>(off.size()) < cfg.N)
        off.push_back(Individual{polynomial_mutation(c2, spec.bounds, cfg.var.eta_m, p_m, rng_var),
                                 {}, std::nullopt});
    }
    evaluate_population(spec, off, fe);

    Population unioned = pop;
    unioned.insert(unioned.end(), off.begin(), off.end());
    pop = environmental_select(unioned, static_cast<std::size_t>(cfg.N));

    if (fe.used - last_snap >= cfg.trace_cadence) {
      take_snapshot(pop, ctx, fe.used, rec.snapshots);
      last_snap = fe.used;
    }
  }
  if (rec.snapshots.empty() || rec.snapshots.back().fe != fe.used)
    take_snapshot(pop, ctx, fe.used, rec.snapshots);

  finalize_record(rec, pop, t0, fe);
  return rec;
}

RunRecord run_algorithm(const RunConfig& cfg) {
  RunConfig resolved = cfg;
  resolved.resolve();
  if (resolved.algorithm == "SPEA2") return run_spea2(resolved);
  return run_gmoea(resolved);
}

double final_indicator(const RunRecord& rec, Indicator which) {
  if (rec.snapshots.empty()) throw StateError("record has no snapshots");
  return which == Indicator::Igd ? rec.snapshots.back().igd : rec.snapshots.back().hv;
}

CompareResult compare(const std::vector<RunRecord>& a, const std::vector<RunRecord>& b,
                      Indicator which, double alpha) {
  if (a.empty() || b.empty()) throw PreconditionError("compare: empty record set");
  auto key = [](const RunRecord& r) {
    return r.config.problem + "|" + std::to_string(r.config.D) + "|" +
           std::to_string(r.config.budget);
  };
  const std::string ka = key(a.front());
  for (const auto& r : a)
    if (key(r) != ka) throw PreconditionError("compare: record set a mixes configurations");
  for (const auto& r : b)
    if (key(r) != ka)
      throw PreconditionError("compare: record sets ran different problem/D/budget");

  std::vector<double> va, vb;
  for (const auto& r : a) va.push_back(final_indicator(r, which));
  for (const auto& r : b) vb.push_back(final_indicator(r, which));

  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };

  CompareResult res;
  res.median_a = median(va);
  res.median_b = median(vb);
  const WilcoxonResult w = wilcoxon_rank_sum(va, vb, alpha);
  res.p = w.p;
  if (!w.significant) {
    res.symbol = '=';
  } else {
    const bool a_better = which == Indicator::Igd ? w.a_lower : !w.a_lower;
    res.symbol = a_better ? '+' : '-';
  }
  return res;
}

}  // namespace gmoea
