#ifndef TCSP_INSTANCE_HPP
#define TCSP_INSTANCE_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tcsp/relation.hpp"

namespace tcsp {

/// Sorted list of variable ids.
using VarSet = std::vector<int>;

struct Constraint {
  std::string symbol;
  RelationPtr relation;
  std::vector<int> scope;  // variable ids, repetitions allowed
};

/// A finite instance: named variables and constraints R(v1,...,vk) whose
/// relations are held by pointer, so projections and contractions can
/// replace them without touching the template.
class Instance {
 public:
  Instance() = default;

  /// Returns the id of `name`, adding it when new.
  int add_variable(const std::string& name);
  /// -1 when absent.
  int find_variable(std::string_view name) const;
  /// Throws ArityError when the scope does not fit the relation.
  void add_constraint(std::string symbol, RelationPtr relation, std::vector<int> scope);
  /// Adds by variable names, declaring new ones.
  void add_constraint(std::string symbol, RelationPtr relation, const std::vector<std::string>& scope);

  std::size_t variable_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& variables() const noexcept { return names_; }
  const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

  /// Distinct variables of constraint c, in order of first occurrence.
  std::vector<int> distinct_scope(std::size_t c) const;

  /// Same variable names in order and the same constraints (symbol, scope by
  /// name, relation as orbit set) in order.
  friend bool operator==(const Instance& a, const Instance& b);

  /// One constraint per line, `R(a,b,c)`.
  std::string to_string() const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> ids_;
  std::vector<Constraint> constraints_;
};

/// Parses `SYM(v1,...,vk)` lines against `tmpl`. `#` starts a comment; a
/// `template <file>` line is skipped (see load_instance_file); a line
/// `vars a b c` declares variables that may occur in no constraint.
/// Throws ParseError, UnknownSymbolError or ArityError with the line number.
Instance parse_instance(std::string_view text, const Template& tmpl);

/// Union-find over the variable ids of one instance. The representative of a
/// class is its smallest id.
class VarPartition {
 public:
  explicit VarPartition(std::size_t n);
  std::size_t size() const noexcept { return parent_.size(); }
  int find(int x) const;
  /// True when the classes were distinct.
  bool unite(int a, int b);
  bool same(int a, int b) const { return find(a) == find(b); }
  /// Classes with more than one member, each sorted, ordered by smallest member.
  std::vector<VarSet> nontrivial_classes() const;

 private:
  mutable std::vector<int> parent_;
};

/// Projection to the variables in `keep`: each constraint keeps the positions
/// whose variable is kept, with its relation projected to them; constraints
/// losing every position are dropped. Kept variables retain their order.
Instance project_instance(const Instance& a, const VarSet& keep);

/// Contraction: every variable is replaced by its class representative and
/// each relation is restricted to tuples that are equal on positions holding
/// the same representative. Representatives keep their names.
Instance contract_instance(const Instance& a, const VarPartition& c);

/// Every relation replaced by its dual.
Instance dual_instance(const Instance& a);

/// Min-sets of R(s): variable sets M such that some orbit t of R has
/// Minset(t) = {i | s[i] in M}. Sorted.
std::vector<VarSet> minsystem(const TemporalRelation& r, const std::vector<int>& scope);

/// Min-sets of R(s) contained in `v`.
std::vector<VarSet> ideal(const TemporalRelation& r, const VarSet& v, const std::vector<int>& scope);
/// Min-sets of R(s) containing `v`.
std::vector<VarSet> filter(const TemporalRelation& r, const VarSet& v, const std::vector<int>& scope);

/// Throws PreconditionError for an empty set.
bool is_free_set(const Instance& a, const VarSet& f);

/// Largest variable count all_free_sets_bruteforce accepts.
inline constexpr std::size_t kMaxBruteforceFreeSetVars = 20;

/// All free sets, by testing every non-empty subset. Sorted.
std::vector<VarSet> all_free_sets_bruteforce(const Instance& a);

/// Union of all free sets for templates preserved by min: shrink F from all
/// variables by replacing F on each constraint with the union of its ideal,
/// until nothing changes.
VarSet union_free_min(const Instance& a);

struct MiComponents {
  /// components[x] is F_x: empty when x lies in no free set.
  std::vector<VarSet> components;
  VarSet united;
};

/// F_x for every variable, for templates preserved by mi or ll: grow F_x from
/// {x} by the intersection of the filter on each constraint it meets; an
/// empty filter empties F_x.
MiComponents free_components_mi(const Instance& a);

/// Union of all free sets for templates preserved by mx: x is kept iff the
/// parity equations of all min-systems allow x = 1.
VarSet union_free_mx(const Instance& a);

/// The non-empty F_x that contain no other non-empty F_y, without duplicates.
std::vector<VarSet> irreducible_free_sets(const Instance& a);

}  // namespace tcsp

#endif  // TCSP_INSTANCE_HPP
