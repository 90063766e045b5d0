#ifndef TCSP_SOLVER_HPP
#define TCSP_SOLVER_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcsp/instance.hpp"
#include "tcsp/polymorphism.hpp"

namespace tcsp {

/// One step of a decision procedure: `stage` names what happened and `sets`
/// lists the variable sets involved (removed free sets, contracted classes).
struct TraceStep {
  std::string stage;
  std::vector<std::vector<std::string>> sets;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// Variable name -> rank of a weak order.
using Assignment = std::map<std::string, int>;

struct Verdict {
  bool satisfiable = false;
  std::optional<Assignment> witness;
  std::vector<TraceStep> trace;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

using FreeSetFn = std::function<VarSet(const Instance&)>;

/// Removes freeset_fn(A) by projection until it returns the empty set;
/// satisfiable iff no variable is left.
Verdict solve_projection_loop(const Instance& a, const FreeSetFn& freeset_fn);

/// Contraction loop for templates preserved by ll: repeatedly removes the
/// irreducible free sets while recording that their members coincide, then
/// contracts the instance by everything recorded, until the instance stops
/// changing. Throws PreconditionError when some relation of `a` is not
/// preserved by ll.
Verdict solve_ll(const Instance& a);

/// Largest variable count the brute-force oracle accepts by default.
inline constexpr std::size_t kDefaultOracleVars = 8;

struct SolveOptions {
  /// Run the brute-force oracle on templates in the NP-complete case.
  bool allow_oracle = false;
  std::size_t max_oracle_vars = kDefaultOracleVars;
};

/// Picks the algorithm for a template once and applies it to instances.
///
/// Priority: constant, min, mx, mi, ll, then the duals in the same order.
/// Dual cases run the primal algorithm on the dual instance.
class Dispatcher {
 public:
  explicit Dispatcher(const Template& t, SolveOptions options = {});
  Dispatcher(const Template& t, Classification c, SolveOptions options = {});

  const Classification& classification() const noexcept { return classification_; }
  /// `min`, `dual-ll`, `const`, or `oracle`; empty when nothing applies.
  const std::string& algorithm() const noexcept { return algorithm_; }

  /// Throws NpHardTemplateError when no polynomial algorithm applies and the
  /// oracle is not allowed.
  Verdict solve(const Instance& a) const;

 private:
  void choose();

  Classification classification_;
  SolveOptions options_;
  std::string algorithm_;
  std::optional<PolyOp> op_;
};

Verdict solve(const Instance& a, const Template& t, const SolveOptions& options = {});

/// Brute force over all weak orders on the variables; the witness is the
/// first solution in enumeration order. Parallel over prefixes; the result
/// is the same as the serial one. Throws SizeLimitError above `max_vars`.
Verdict oracle_solve(const Instance& a, std::size_t max_vars = kDefaultOracleVars);

/// Throws PreconditionError when a variable has no value.
bool check_solution(const Instance& a, const Assignment& assignment);

/// Equations x + y + z = 0 over GF(2); names may repeat.
struct XorSystem {
  std::vector<std::array<std::string, 3>> equations;
};

/// Whether every non-empty subset of the equations has a solution that sets
/// some of its variables to 1. Decided as the CSP of X.
bool ord_xor_sat(const XorSystem& s);

/// The instance over X with one constraint per equation.
Instance xor_instance(const XorSystem& s, const Template& x_template);

}  // namespace tcsp

#endif  // TCSP_SOLVER_HPP
