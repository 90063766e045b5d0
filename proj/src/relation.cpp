#include "tcsp/relation.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "tcsp/error.hpp"

namespace tcsp {

TemporalRelation::TemporalRelation(std::size_t arity, std::vector<OrderTuple> orbits, std::string name)
    : arity_(arity), orbits_(std::move(orbits)), name_(std::move(name)) {
  if (arity_ == 0) throw ArityError("temporal relations have arity >= 1");
  for (const auto& t : orbits_) {
    if (t.arity() != arity_) {
      throw ArityError("orbit " + t.to_string() + " does not have arity " + std::to_string(arity_));
    }
  }
  std::sort(orbits_.begin(), orbits_.end());
  orbits_.erase(std::unique(orbits_.begin(), orbits_.end()), orbits_.end());
}

TemporalRelation TemporalRelation::from_predicate(std::size_t n,
                                                  const std::function<bool(const OrderTuple&)>& pred,
                                                  std::string name) {
  std::vector<OrderTuple> orbits;
  for_each_weak_order(n, [&](const OrderTuple& t) {
    if (pred(t)) orbits.push_back(t);
  });
  return TemporalRelation(n, std::move(orbits), std::move(name));
}

TemporalRelation TemporalRelation::full(std::size_t n, std::string name) {
  return from_predicate(n, [](const OrderTuple&) { return true; }, std::move(name));
}

bool TemporalRelation::contains(const OrderTuple& t) const {
  if (t.arity() != arity_) {
    throw ArityError("tuple of arity " + std::to_string(t.arity()) + " tested against relation of arity " +
                     std::to_string(arity_));
  }
  return std::binary_search(orbits_.begin(), orbits_.end(), t);
}

std::string TemporalRelation::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < orbits_.size(); ++i) {
    if (i) out += ';';
    out += orbits_[i].to_string();
  }
  out += '}';
  return out;
}

TemporalRelation pr_rel(const TemporalRelation& r, std::span<const int> indices) {
  if (indices.empty()) throw ArityError("projection to an empty index set");
  std::vector<OrderTuple> out;
  out.reserve(r.size());
  for (const auto& t : r.orbits()) out.push_back(project_tuple(t, indices));
  return TemporalRelation(indices.size(), std::move(out));
}

TemporalRelation con_rel(const TemporalRelation& r, std::span<const int> classes) {
  if (classes.size() != r.arity()) throw ArityError("contraction classes do not match the arity");
  std::vector<OrderTuple> out;
  for (const auto& t : r.orbits()) {
    bool keep = true;
    for (std::size_t i = 0; i < classes.size() && keep; ++i) {
      for (std::size_t j = i + 1; j < classes.size(); ++j) {
        if (classes[i] == classes[j] && t[i] != t[j]) {
          keep = false;
          break;
        }
      }
    }
    if (keep) out.push_back(t);
  }
  return TemporalRelation(r.arity(), std::move(out));
}

TemporalRelation dual_rel(const TemporalRelation& r) {
  std::vector<OrderTuple> out;
  out.reserve(r.size());
  for (const auto& t : r.orbits()) out.push_back(dual_tuple(t));
  std::string name = r.name().empty() ? std::string() : "-" + r.name();
  return TemporalRelation(r.arity(), std::move(out), std::move(name));
}

std::vector<BitTuple> ms(const TemporalRelation& r) {
  std::vector<BitTuple> out;
  out.reserve(r.size() + 1);
  out.emplace_back(0u, r.arity());
  for (const auto& t : r.orbits()) out.push_back(chi(t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TemporalRelation rmx(std::span<const int> indices, std::size_t n) {
  if (indices.empty()) throw ArityError("basic Ord-Xor relation needs a non-empty index set");
  std::uint32_t mask = 0;
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) throw ArityError("index out of range in rmx");
    mask |= 1u << i;
  }
  return TemporalRelation::from_predicate(n, [mask](const OrderTuple& t) {
    return __builtin_popcount(chi(t).mask() & mask) % 2 == 0;
  });
}

namespace {

struct LibraryEntry {
  std::string_view name;
  std::size_t arity;
  bool (*pred)(const OrderTuple&);
};

constexpr std::array<LibraryEntry, 12> kLibrary{{
    {"lt", 2, [](const OrderTuple& t) { return t[0] < t[1]; }},
    {"leq", 2, [](const OrderTuple& t) { return t[0] <= t[1]; }},
    {"eq", 2, [](const OrderTuple& t) { return t[0] == t[1]; }},
    {"neq", 2, [](const OrderTuple& t) { return t[0] != t[1]; }},
    // x=y<z or y=z<x or z=x<y
    {"X", 3,
     [](const OrderTuple& t) {
       return (t[0] == t[1] && t[1] < t[2]) || (t[1] == t[2] && t[2] < t[0]) ||
              (t[2] == t[0] && t[0] < t[1]);
     }},
    {"Rmin", 3, [](const OrderTuple& t) { return t[1] < t[0] || t[2] < t[0]; }},
    {"RminLeq", 3, [](const OrderTuple& t) { return t[1] <= t[0] || t[2] <= t[0]; }},
    {"Rmi", 3, [](const OrderTuple& t) { return t[1] < t[0] || t[2] <= t[0]; }},
    {"Smi", 3, [](const OrderTuple& t) { return t[0] != t[1] || t[2] <= t[0]; }},
    {"Rll", 3,
     [](const OrderTuple& t) { return t[1] < t[0] || t[2] < t[0] || (t[0] == t[1] && t[1] == t[2]); }},
    {"Sll", 4, [](const OrderTuple& t) { return t[0] != t[1] || t[2] <= t[3]; }},
    {"Betw", 3,
     [](const OrderTuple& t) { return (t[0] < t[1] && t[1] < t[2]) || (t[2] < t[1] && t[1] < t[0]); }},
}};

constexpr std::array<std::string_view, kLibrary.size()> kLibraryNames = [] {
  std::array<std::string_view, kLibrary.size()> names{};
  for (std::size_t i = 0; i < kLibrary.size(); ++i) names[i] = kLibrary[i].name;
  return names;
}();

}  // namespace

std::span<const std::string_view> library_names() { return kLibraryNames; }

TemporalRelation named(std::string_view name) {
  for (const auto& entry : kLibrary) {
    if (entry.name == name) {
      return TemporalRelation::from_predicate(entry.arity, entry.pred, std::string(name));
    }
  }
  throw UnknownSymbolError("unknown library relation '" + std::string(name) + "'");
}

void Template::add(std::string symbol, TemporalRelation relation) {
  add(std::move(symbol), std::make_shared<const TemporalRelation>(std::move(relation)));
}

void Template::add(std::string symbol, RelationPtr relation) {
  if (index_.count(symbol)) throw ArityError("duplicate relation symbol '" + symbol + "'");
  index_.emplace(symbol, entries_.size());
  entries_.push_back({std::move(symbol), std::move(relation)});
}

RelationPtr Template::find(std::string_view symbol) const {
  auto it = index_.find(symbol);
  return it == index_.end() ? nullptr : entries_[it->second].relation;
}

const RelationPtr& Template::at(std::string_view symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) throw UnknownSymbolError("unknown relation symbol '" + std::string(symbol) + "'");
  return entries_[it->second].relation;
}

Template Template::dual() const {
  Template out;
  for (const auto& e : entries_) out.add(e.symbol, dual_rel(*e.relation));
  return out;
}

Template Template::from_library(std::initializer_list<std::string_view> names) {
  Template out;
  for (auto n : names) out.add(std::string(n), named(n));
  return out;
}

}  // namespace tcsp
