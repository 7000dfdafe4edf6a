#include "gmoea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace gmoea {

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {"IMF1", "IMF2", "IMF3", "IMF4", "IMF5",
                                                 "IMF6", "IMF7", "IMF8", "IMF9", "IMF10"};
  return names;
}

const std::vector<int>& dimension_presets() {
  static const std::vector<int> dims = {30, 50, 100, 200};
  return dims;
}

long long budget_for_dimension(int D) {
  switch (D) {
    case 30: return 5000;
    case 50: return 10000;
    case 100: return 15000;
    case 200: return 30000;
    default:
      throw LookupError("no budget preset for D=" + std::to_string(D) +
                        " (presets: 30, 50, 100, 200); set the budget explicitly");
  }
}

int default_population_size(int M) { return M == 3 ? 105 : 100; }

ProblemSpec make_problem(const std::string& name, int D) {
  const auto& names = problem_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw LookupError("unknown problem '" + name + "' (expected IMF1..IMF10)");
  ProblemSpec spec;
  spec.id = static_cast<ProblemId>(it - names.begin());
  spec.name = name;
  if (D < 3) throw RangeError("problem dimension must be >= 3, got " + std::to_string(D));
  spec.D = D;
  const bool tri = spec.id == ProblemId::IMF4 || spec.id == ProblemId::IMF8;
  spec.M = tri ? 3 : 2;
  const int n_position = tri ? 2 : 1;
  spec.bounds.lower.assign(D, 0.0);
  spec.bounds.upper.assign(D, 10.0);
  for (int i = 0; i < n_position; ++i) spec.bounds.upper[i] = 1.0;
  return spec;
}

namespace {

// Mean of t_i^2 over the distance variables, t_i = x_i/10 - x1 (linear) or
// (x_i/10)^2 - x1 (nonlinear). Left-to-right accumulation; the golden-value
// generator mirrors this order exactly.
double mean_sq_linkage(const DecisionVector& x, int first, bool nonlinear) {
  double acc = 0.0;
  const int D = static_cast<int>(x.size());
  for (int i = first; i < D; ++i) {
    const double y = x[i] / 10.0;
    const double t = nonlinear ? y * y - x[0] : y - x[0];
    acc += t * t;
  }
  return acc / static_cast<double>(D - first);
}

double sum_sq_linkage(const DecisionVector& x, int first, bool nonlinear) {
  double acc = 0.0;
  const int D = static_cast<int>(x.size());
  for (int i = first; i < D; ++i) {
    const double y = x[i] / 10.0;
    const double t = nonlinear ? y * y - x[0] : y - x[0];
    acc += t * t;
  }
  return acc;
}

double oscillatory_f1(double x1) {
  const double s = std::sin(6.0 * M_PI * x1);
  return 1.0 - std::exp(-4.0 * x1) * std::pow(s, 6);
}

}  // namespace

double zdt6_style_f1_min() {
  // Minimize 1 - exp(-4x) sin^6(6 pi x); the minimizer sits in the first
  // oscillation lobe. Golden-section search, deterministic to ~1e-16.
  static const double cached = [] {
    double a = 0.05, b = 0.12;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 200; ++it) {
      if (oscillatory_f1(c) < oscillatory_f1(d)) b = d; else a = c;
      c = b - gr * (b - a);
      d = a + gr * (b - a);
    }
    return oscillatory_f1(0.5 * (a + b));
  }();
  return cached;
}

ObjectiveVector objective_eval(const ProblemSpec& spec, const DecisionVector& x) {
  if (static_cast<int>(x.size()) != spec.D)
    throw DimensionError("objective_eval: expected " + std::to_string(spec.D) + " variables, got " +
                         std::to_string(x.size()));
  for (int i = 0; i < spec.D; ++i)
    if (x[i] < spec.bounds.lower[i] || x[i] > spec.bounds.upper[i])
      throw RangeError("objective_eval: variable " + std::to_string(i) + " = " +
                       std::to_string(x[i]) + " outside [" + std::to_string(spec.bounds.lower[i]) +
                       ", " + std::to_string(spec.bounds.upper[i]) + "]");

  const double x1 = x[0];
  ObjectiveVector f;

  switch (spec.id) {
    case ProblemId::IMF1: {
      const double g = 1.0 + 9.0 * mean_sq_linkage(x, 1, false);
      f = {x1, g * (1.0 - std::sqrt(x1 / g))};
      break;
    }
    case ProblemId::IMF2: {
      const double g = 1.0 + 9.0 * mean_sq_linkage(x, 1, false);
      f = {x1, g * (1.0 - (x1 / g) * (x1 / g))};
      break;
    }
    case ProblemId::IMF3: {
      const double f1 = oscillatory_f1(x1);
      const double g = 1.0 + 9.0 * mean_sq_linkage(x, 1, false);
      f = {f1, g * (1.0 - (f1 / g) * (f1 / g))};
      break;
    }
    case ProblemId::IMF4: {
      const double g = sum_sq_linkage(x, 2, false);
      const double a1 = 0.5 * M_PI * x1, a2 = 0.5 * M_PI * x[1];
      f = {(1.0 + g) * std::cos(a1) * std::cos(a2),
           (1.0 + g) * std::cos(a1) * std::sin(a2),
           (1.0 + g) * std::sin(a1)};
      break;
    }
    case ProblemId::IMF5: {
      const double g = 1.0 + 9.0 * mean_sq_linkage(x, 1, true);
      f = {x1, g * (1.0 - std::sqrt(x1 / g))};
      break;
    }
    case ProblemId::IMF6: {
      const double g = 1.0 + 9.0 * mean_sq_linkage(x, 1, true);
      f = {x1, g * (1.0 - (x1 / g) * (x1 / g))};
      break;
    }
    case ProblemId::IMF7: {
      const double f1 = oscillatory_f1(x1);
      const double g = 1.0 + 9.0 * mean_sq_linkage(x, 1, true);
      f = {f1, g * (1.0 - (f1 / g) * (f1 / g))};
      break;
    }
    case ProblemId::IMF8: {
      const double g = sum_sq_linkage(x, 2, true);
      const double a1 = 0.5 * M_PI * x1, a2 = 0.5 * M_PI * x[1];
      f = {(1.0 + g) * std::cos(a1) * std::cos(a2),
           (1.0 + g) * std::cos(a1) * std::sin(a2),
           (1.0 + g) * std::sin(a1)};
      break;
    }
    case ProblemId::IMF9: {
      // Griewank landscape over the linkage residuals; equals 1 exactly on
      // the Pareto set (residuals zero).
      double sum = 0.0, prod = 1.0;
      for (int i = 1; i < spec.D; ++i) {
        const double t = x[i] / 10.0 - x1;
        sum += t * t / 4000.0;
        prod *= std::cos(t / std::sqrt(static_cast<double>(i)));
      }
      const double g = 2.0 + sum - prod;
      f = {x1, g * (1.0 - std::sqrt(x1 / g))};
      break;
    }
    case ProblemId::IMF10: {
      // Rastrigin landscape over the linkage residuals.
      double acc = 0.0;
      for (int i = 1; i < spec.D; ++i) {
        const double t = x[i] / 10.0 - x1;
        acc += t * t - 10.0 * std::cos(2.0 * M_PI * t) + 10.0;
      }
      const double g = 1.0 + acc;
      f = {x1, g * (1.0 - std::sqrt(x1 / g))};
      break;
    }
  }
  return f;
}

namespace {

enum class FrontShape { Sqrt, Square, SquareOscillatory, Sphere };

FrontShape front_shape(ProblemId id) {
  switch (id) {
    case ProblemId::IMF2:
    case ProblemId::IMF6:
      return FrontShape::Square;
    case ProblemId::IMF3:
    case ProblemId::IMF7:
      return FrontShape::SquareOscillatory;
    case ProblemId::IMF4:
    case ProblemId::IMF8:
      return FrontShape::Sphere;
    default:
      return FrontShape::Sqrt;
  }
}

}  // namespace

std::vector<ObjectiveVector> sample_pf(const ProblemSpec& spec, int target) {
  if (target < 2) throw RangeError("sample_pf: target must be >= 2, got " + std::to_string(target));
  std::vector<ObjectiveVector> pf;
  const FrontShape shape = front_shape(spec.id);

  if (shape == FrontShape::Sphere) {
    // Simplex-lattice directions projected onto the unit sphere. Cardinality
    // (H+1)(H+2)/2; pick the H whose cardinality is closest to target.
    auto card = [](long long H) { return (H + 1) * (H + 2) / 2; };
    long long H = 1;
    while (card(H + 1) <= target) ++H;
    // H or H+1, whichever is closer (ties -> smaller grid).
    if (std::llabs(card(H + 1) - target) < std::llabs(card(H) - target)) ++H;
    pf.reserve(static_cast<std::size_t>(card(H)));
    for (long long i = 0; i <= H; ++i) {
      for (long long j = 0; j <= H - i; ++j) {
        const long long k = H - i - j;
        double w1 = static_cast<double>(i) / H;
        double w2 = static_cast<double>(j) / H;
        double w3 = static_cast<double>(k) / H;
        const double norm = std::sqrt(w1 * w1 + w2 * w2 + w3 * w3);
        pf.push_back({w1 / norm, w2 / norm, w3 / norm});
      }
    }
    return pf;
  }

  const double lo = shape == FrontShape::SquareOscillatory ? zdt6_style_f1_min() : 0.0;
  pf.reserve(static_cast<std::size_t>(target));
  for (int i = 0; i < target; ++i) {
    const double f1 = lo + (1.0 - lo) * static_cast<double>(i) / (target - 1);
    const double f2 = shape == FrontShape::Sqrt ? 1.0 - std::sqrt(f1) : 1.0 - f1 * f1;
    pf.push_back({f1, f2});
  }
  return pf;
}

void evaluate_population(const ProblemSpec& spec, Population& pop, FeCounter& fe) {
  long long pending = 0;
  for (const auto& ind : pop)
    if (!ind.evaluated()) ++pending;
  fe.debit(pending);  // throws before any evaluation happens
  for (auto& ind : pop)
    if (!ind.evaluated()) ind.f = objective_eval(spec, ind.x);
}

Population random_population(const ProblemSpec& spec, int n, RngStream& rng) {
  Population pop(static_cast<std::size_t>(n));
  for (auto& ind : pop) {
    ind.x.resize(spec.D);
    for (int i = 0; i < spec.D; ++i)
      ind.x[i] = rng.uniform(spec.bounds.lower[i], spec.bounds.upper[i]);
  }
  return pop;
}

}  // namespace gmoea
