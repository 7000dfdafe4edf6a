#pragma once

// Core value types, error taxonomy, deterministic RNG streams and the
// function-evaluation budget counter shared by every other component.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmoea {

using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

// ---------------------------------------------------------------------------
// Errors. Everything thrown by the library derives from Error so the CLI can
// map config problems to exit 1 and runtime failures to exit 2.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : Error { using Error::Error; };        // bad user input / config file
struct DimensionError : Error { using Error::Error; };     // mismatched vector lengths
struct RangeError : Error { using Error::Error; };         // value outside valid range
struct BudgetError : Error { using Error::Error; };        // FE budget overrun
struct StateError : Error { using Error::Error; };         // object used before ready
struct PreconditionError : Error { using Error::Error; };  // caller broke a contract
struct LookupError : Error { using Error::Error; };        // unknown name
struct DegeneracyError : Error { using Error::Error; };    // degenerate numeric input
struct UnsupportedError : Error { using Error::Error; };   // valid but not implemented (e.g. M>3 HV)

// ---------------------------------------------------------------------------
// Box bounds
// ---------------------------------------------------------------------------

struct BoxBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const { return lower.size(); }
  void validate() const;  // throws RangeError if lower[i] > upper[i] or sizes differ
};

// Componentwise clamp of x into [lower, upper].
DecisionVector clamp(const DecisionVector& x, const BoxBounds& b);

enum class Rescale { ToUnit, FromUnit };

// Affine map between the decision box and the unit cube.
DecisionVector rescale(const DecisionVector& x, const BoxBounds& b, Rescale dir);
DecisionVector to_unit(const DecisionVector& x, const BoxBounds& b);
DecisionVector from_unit(const DecisionVector& y, const BoxBounds& b);

// ---------------------------------------------------------------------------
// Pareto dominance (minimization): a dominates b iff a <= b componentwise
// with at least one strict inequality. Incomparable pairs are false both ways.
// ---------------------------------------------------------------------------

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// ---------------------------------------------------------------------------
// Individuals / populations
// ---------------------------------------------------------------------------

struct Individual {
  DecisionVector x;
  ObjectiveVector f;                   // empty until evaluated
  std::optional<double> fitness;       // cached SPEA2 fitness, if computed

  bool evaluated() const { return !f.empty(); }
};

using Population = std::vector<Individual>;

// ---------------------------------------------------------------------------
// Deterministic RNG. mt19937_64 has a standard-mandated bit sequence; the
// distribution transforms live here (not std::*_distribution, whose output is
// implementation-defined) so that records are byte-reproducible everywhere.
// Distinct stream ids derived from the same seed give independent streams.
// ---------------------------------------------------------------------------

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + u01() * (hi - lo); }

  // Unbiased uniform integer in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n);

  // Standard normal via Box-Muller (caches the spare deviate).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {  // Fisher-Yates
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Function-evaluation budget
// ---------------------------------------------------------------------------

struct FeCounter {
  long long budget = 0;
  long long used = 0;

  long long remaining() const { return budget - used; }
  // Debit n evaluations; throws BudgetError identifying the shortfall.
  void debit(long long n);
};

}  // namespace gmoea
