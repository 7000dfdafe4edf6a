#include "gmoea/core.hpp"

#include <algorithm>
#include <cmath>

namespace gmoea {

void BoxBounds::validate() const {
  if (lower.size() != upper.size())
    throw RangeError("bounds dimension mismatch: lower has " + std::to_string(lower.size()) +
                     " entries, upper has " + std::to_string(upper.size()));
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i])
      throw RangeError("invalid bounds at index " + std::to_string(i) + ": lower " +
                       std::to_string(lower[i]) + " > upper " + std::to_string(upper[i]));
}

DecisionVector clamp(const DecisionVector& x, const BoxBounds& b) {
  b.validate();
  if (x.size() != b.dim())
    throw DimensionError("clamp: vector has " + std::to_string(x.size()) + " entries, bounds " +
                         std::to_string(b.dim()));
  DecisionVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = std::min(b.upper[i], std::max(b.lower[i], x[i]));
  return out;
}

DecisionVector rescale(const DecisionVector& x, const BoxBounds& b, Rescale dir) {
  b.validate();
  if (x.size() != b.dim())
    throw DimensionError("rescale: vector has " + std::to_string(x.size()) + " entries, bounds " +
                         std::to_string(b.dim()));
  DecisionVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = b.upper[i] - b.lower[i];
    if (dir == Rescale::ToUnit)
      out[i] = w == 0.0 ? 0.0 : (x[i] - b.lower[i]) / w;
    else
      out[i] = b.lower[i] + x[i] * w;
  }
  return out;
}

DecisionVector to_unit(const DecisionVector& x, const BoxBounds& b) {
  return rescale(x, b, Rescale::ToUnit);
}

DecisionVector from_unit(const DecisionVector& y, const BoxBounds& b) {
  return rescale(y, b, Rescale::FromUnit);
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size())
    throw DimensionError("dominates: objective vectors of size " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  if (a.empty()) throw DimensionError("dominates: empty objective vectors");
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(splitmix64(seed ^ splitmix64(stream_id))) {}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw RangeError("RngStream::below(0)");
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1-u keeps the log argument in (0, 1].
  const double u1 = u01();
  const double u2 = u01();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void FeCounter::debit(long long n) {
  if (n < 0) throw PreconditionError("FeCounter::debit: negative count");
  if (n > remaining())
    throw BudgetError("evaluation budget exceeded: need " + std::to_string(n) + ", remaining " +
                      std::to_string(remaining()) + " of " + std::to_string(budget));
  used += n;
}

}  // namespace gmoea
