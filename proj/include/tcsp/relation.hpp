#ifndef TCSP_RELATION_HPP
#define TCSP_RELATION_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcsp/order_type.hpp"

namespace tcsp {

/// A temporal relation, stored as the finite set of orbits it is the union of.
class TemporalRelation {
 public:
  TemporalRelation() = default;
  /// Orbits are sorted and deduplicated; each must have the given arity.
  TemporalRelation(std::size_t arity, std::vector<OrderTuple> orbits, std::string name = {});

  /// All order types of arity n that satisfy `pred`.
  static TemporalRelation from_predicate(std::size_t n,
                                         const std::function<bool(const OrderTuple&)>& pred,
                                         std::string name = {});
  /// Q^n.
  static TemporalRelation full(std::size_t n, std::string name = {});

  std::size_t arity() const noexcept { return arity_; }
  const std::vector<OrderTuple>& orbits() const noexcept { return orbits_; }
  std::size_t size() const noexcept { return orbits_.size(); }
  bool empty() const noexcept { return orbits_.empty(); }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Throws ArityError when the tuple arity differs.
  bool contains(const OrderTuple& t) const;

  /// Equality of arity and orbit set; names are ignored.
  friend bool operator==(const TemporalRelation& a, const TemporalRelation& b) {
    return a.arity_ == b.arity_ && a.orbits_ == b.orbits_;
  }

  /// `{<0,0,1>;<0,1,0>}`
  std::string to_string() const;

 private:
  std::size_t arity_ = 0;
  std::vector<OrderTuple> orbits_;
  std::string name_;
};

using RelationPtr = std::shared_ptr<const TemporalRelation>;

inline bool contains(const TemporalRelation& r, const OrderTuple& t) { return r.contains(t); }

/// Projection to the listed coordinates (0-based, ordered). Empty list rejected.
TemporalRelation pr_rel(const TemporalRelation& r, std::span<const int> indices);
inline TemporalRelation pr_rel(const TemporalRelation& r, std::initializer_list<int> indices) {
  return pr_rel(r, std::span<const int>(indices.begin(), indices.size()));
}

/// Contraction: keeps orbits in which coordinates with equal class label
/// hold equal values. `classes[i]` is the label of coordinate i.
TemporalRelation con_rel(const TemporalRelation& r, std::span<const int> classes);
inline TemporalRelation con_rel(const TemporalRelation& r, std::initializer_list<int> classes) {
  return con_rel(r, std::span<const int>(classes.begin(), classes.size()));
}

TemporalRelation dual_rel(const TemporalRelation& r);

/// Min-tuples of the orbits together with the zero tuple, sorted.
std::vector<BitTuple> ms(const TemporalRelation& r);

/// Basic Ord-Xor relation: order types of arity n whose min-indicator has even
/// weight on the coordinates in `indices` (0-based).
TemporalRelation rmx(std::span<const int> indices, std::size_t n);
inline TemporalRelation rmx(std::initializer_list<int> indices, std::size_t n) {
  return rmx(std::span<const int>(indices.begin(), indices.size()), n);
}

/// Names accepted by named().
std::span<const std::string_view> library_names();

/// Library relation by name: lt, leq, eq, neq, X, Rmin, RminLeq, Rmi, Smi,
/// Rll, Sll, Betw. Throws UnknownSymbolError otherwise.
TemporalRelation named(std::string_view name);

/// A relational structure over Q: symbols with their interpreting relations.
class Template {
 public:
  struct Entry {
    std::string symbol;
    RelationPtr relation;
  };

  Template() = default;

  /// Throws on a duplicate symbol.
  void add(std::string symbol, TemporalRelation relation);
  void add(std::string symbol, RelationPtr relation);

  /// Null when absent.
  RelationPtr find(std::string_view symbol) const;
  /// Throws UnknownSymbolError when absent.
  const RelationPtr& at(std::string_view symbol) const;

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Template whose relations are the duals of this one's, same symbols.
  Template dual() const;

  /// Convenience: a template holding the named library relations under their own names.
  static Template from_library(std::initializer_list<std::string_view> names);

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace tcsp

#endif  // TCSP_RELATION_HPP
