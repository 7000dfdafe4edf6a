#include "gmoea/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gmoea {

namespace {

void check_set(const std::vector<ObjectiveVector>& s, std::size_t m, const char* who) {
  if (s.empty()) throw PreconditionError(std::string(who) + ": empty set");
  for (const auto& f : s)
    if (f.size() != m) throw DimensionError(std::string(who) + ": inconsistent dimensions");
}

// 2-D hypervolume of (already filtered, in-region) points against ref.
// Sweep by f1 ascending; each staircase point adds the rectangle between its
// f2 and the best f2 seen so far, spanning from its f1 to the reference.
double hv2d(std::vector<ObjectiveVector> pts, double rx, double ry) {
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end());  // by f1 asc, then f2
  double volume = 0.0;
  double best_y = ry;
  for (const auto& p : pts) {
    if (p[1] < best_y) {
      volume += (rx - p[0]) * (best_y - p[1]);
      best_y = p[1];
    }
  }
  return volume;
}

}  // namespace

double igd(const std::vector<ObjectiveVector>& reference,
           const std::vector<ObjectiveVector>& front) {
  if (reference.empty()) throw PreconditionError("igd: empty reference set");
  if (front.empty()) throw PreconditionError("igd: empty front");
  const std::size_t m = reference.front().size();
  check_set(reference, m, "igd reference");
  check_set(front, m, "igd front");

  double total = 0.0;
  for (const auto& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : front) {
      double acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = r[i] - f[i];
        acc += d * d;
      }
      best = std::min(best, acc);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

double hv(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref) {
  const std::size_t m = ref.size();
  if (m != 2 && m != 3)
    throw UnsupportedError("hv: only 2 or 3 objectives supported, got " + std::to_string(m));
  if (front.empty()) return 0.0;
  check_set(front, m, "hv front");

  // keep only points strictly inside the reference box
  std::vector<ObjectiveVector> pts;
  for (const auto& f : front) {
    bool inside = true;
    for (std::size_t i = 0; i < m; ++i)
      if (f[i] >= ref[i]) { inside = false; break; }
    if (inside) pts.push_back(f);
  }
  if (pts.empty()) return 0.0;

  if (m == 2) return hv2d(std::move(pts), ref[0], ref[1]);

  // m == 3: slice along f3. Between consecutive slice heights the dominated
  // area is the 2-D hypervolume of the points active below the slice.
  std::vector<double> zs;
  zs.reserve(pts.size() + 1);
  for (const auto& p : pts) zs.push_back(p[2]);
  zs.push_back(ref[2]);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

  double volume = 0.0;
  for (std::size_t s = 0; s + 1 < zs.size(); ++s) {
    const double z0 = zs[s], z1 = zs[s + 1];
    std::vector<ObjectiveVector> active;
    for (const auto& p : pts)
      if (p[2] <= z0) active.push_back({p[0], p[1]});
    if (!active.empty()) volume += hv2d(std::move(active), ref[0], ref[1]) * (z1 - z0);
  }
  return volume;
}

void ideal_nadir(const std::vector<ObjectiveVector>& set, ObjectiveVector& ideal,
                 ObjectiveVector& nadir) {
  if (set.empty()) throw PreconditionError("ideal_nadir: empty set");
  const std::size_t m = set.front().size();
  check_set(set, m, "ideal_nadir");
  ideal.assign(m, std::numeric_limits<double>::infinity());
  nadir.assign(m, -std::numeric_limits<double>::infinity());
  for (const auto& f : set)
    for (std::size_t i = 0; i < m; ++i) {
      ideal[i] = std::min(ideal[i], f[i]);
      nadir[i] = std::max(nadir[i], f[i]);
    }
}

double normalized_hv(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ideal,
                     const ObjectiveVector& nadir) {
  if (ideal.size() != nadir.size()) throw DimensionError("normalized_hv: ideal/nadir mismatch");
  const std::size_t m = ideal.size();
  for (std::size_t i = 0; i < m; ++i)
    if (!(nadir[i] > ideal[i]))
      throw DegeneracyError("normalized_hv: nadir must exceed ideal in every objective");
  std::vector<ObjectiveVector> norm;
  norm.reserve(front.size());
  for (const auto& f : front) {
    if (f.size() != m) throw DimensionError("normalized_hv: front dimension mismatch");
    ObjectiveVector g(m);
    for (std::size_t i = 0; i < m; ++i) g[i] = (f[i] - ideal[i]) / (nadir[i] - ideal[i]);
    norm.push_back(std::move(g));
  }
  return hv(norm, ObjectiveVector(m, 1.1));
}

WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b,
                                 double alpha) {
  if (a.empty() || b.empty()) throw PreconditionError("wilcoxon_rank_sum: empty sample");
  const std::size_t n = a.size(), m = b.size(), N = n + m;

  struct Entry { double v; bool from_a; };
  std::vector<Entry> pool;
  pool.reserve(N);
  for (double v : a) pool.push_back({v, true});
  for (double v : b) pool.push_back({v, false});
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Entry& x, const Entry& y) { return x.v < y.v; });

  // mid-ranks and tie bookkeeping
  double w_a = 0.0;              // rank sum of sample a
  double tie_term = 0.0;         // sum (t^3 - t) over tie groups
  std::size_t i = 0;
  while (i < N) {
    std::size_t j = i;
    while (j + 1 < N && pool[j + 1].v == pool[i].v) ++j;
    const double t = static_cast<double>(j - i + 1);
    const double mid_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k)
      if (pool[k].from_a) w_a += mid_rank;
    tie_term += t * t * t - t;
    i = j + 1;
  }

  WilcoxonResult r;
  const double mu = static_cast<double>(n) * static_cast<double>(N + 1) / 2.0;
  const double var = static_cast<double>(n) * static_cast<double>(m) / 12.0 *
                     (static_cast<double>(N + 1) -
                      tie_term / (static_cast<double>(N) * static_cast<double>(N - 1)));
  r.a_lower = w_a < mu;
  if (var <= 0.0) {  // fully tied pool
    r.p = 1.0;
    r.z = 0.0;
    r.significant = false;
    return r;
  }
  const double diff = w_a - mu;
  const double cc = diff > 0.0 ? -0.5 : (diff < 0.0 ? 0.5 : 0.0);  // continuity correction
  r.z = (diff + cc) / std::sqrt(var);
  r.p = std::min(1.0, std::erfc(std::abs(r.z) / std::sqrt(2.0)));
  r.significant = r.p < alpha;
  return r;
}

}  // namespace gmoea
