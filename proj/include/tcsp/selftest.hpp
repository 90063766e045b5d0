#ifndef TCSP_SELFTEST_HPP
#define TCSP_SELFTEST_HPP

// Built-in checks run by `tcsp selftest`: pp-definitions compared with the
// relations they are claimed to define, and the fast solvers and free-set
// algorithms compared with brute force on small instances.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tcsp/instance.hpp"
#include "tcsp/relation.hpp"

namespace tcsp {

/// A chain of pp-definitions (template text) whose relation `symbol` should
/// equal the order types accepted by `expected`.
struct LemmaCase {
  std::string name;
  std::string template_text;
  std::string symbol;
  std::size_t arity;
  std::function<bool(const OrderTuple&)> expected;
};

const std::vector<LemmaCase>& lemma_cases();

/// Which free-set algorithm applies to a template family.
enum class FreeSetAlgorithm { None, Min, Mi, Mx };

struct TemplateFamily {
  std::string name;
  Template tmpl;
  FreeSetAlgorithm free_sets = FreeSetAlgorithm::None;
};

/// Templates from each tractable case, plus an Ord-Horn one and a dual one.
const std::vector<TemplateFamily>& template_families();

/// Calls `f` once per instance with at most `max_vars` variables and at most
/// `max_constraints` constraints over the symbols of `tmpl`, up to renaming
/// of variables and reordering of constraints.
void for_each_small_instance(const Template& tmpl, std::size_t max_vars, std::size_t max_constraints,
                             const std::function<void(const Instance&)>& f);

/// Between 1 and max_constraints random constraints over variables v0..v{max_vars-1};
/// only variables that occur are declared.
Instance random_instance(const Template& tmpl, std::mt19937_64& rng, std::size_t max_vars,
                         std::size_t max_constraints);

/// The set returned by the family's free-set algorithm (the union of the F_x for mi).
VarSet fast_free_union(FreeSetAlgorithm algorithm, const Instance& a);

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few only

  bool ok() const noexcept { return failed == 0; }
  void record(bool ok, const std::string& what);
};

SuiteResult run_lemma_suite();
/// solve vs oracle_solve on every small instance and `random_count` random
/// ones per family.
SuiteResult run_oracle_suite(std::size_t random_count = 500, std::uint64_t seed = 1);
/// Fast free-set unions vs brute force on the same corpus.
SuiteResult run_free_set_suite(std::size_t random_count = 500, std::uint64_t seed = 1);

}  // namespace tcsp

#endif  // TCSP_SELFTEST_HPP
