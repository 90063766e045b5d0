#include "tcsp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "tcsp/error.hpp"
#include "tcsp/gf2.hpp"

namespace tcsp {

int Instance::add_variable(const std::string& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  const int id = static_cast<int>(names_.size());
  names_.push_back(name);
  ids_.emplace(name, id);
  return id;
}

int Instance::find_variable(std::string_view name) const {
  auto it = ids_.find(name);
  return it == ids_.end() ? -1 : it->second;
}

void Instance::add_constraint(std::string symbol, RelationPtr relation, std::vector<int> scope) {
  if (!relation) throw PreconditionError("constraint " + symbol + " has no relation");
  if (scope.size() != relation->arity()) {
    throw ArityError("constraint " + symbol + " has " + std::to_string(scope.size()) +
                     " arguments, relation arity is " + std::to_string(relation->arity()));
  }
  for (int v : scope) {
    if (v < 0 || static_cast<std::size_t>(v) >= names_.size()) {
      throw PreconditionError("constraint " + symbol + " uses an undeclared variable");
    }
  }
  constraints_.push_back({std::move(symbol), std::move(relation), std::move(scope)});
}

void Instance::add_constraint(std::string symbol, RelationPtr relation, const std::vector<std::string>& scope) {
  std::vector<int> ids;
  ids.reserve(scope.size());
  for (const auto& v : scope) ids.push_back(add_variable(v));
  add_constraint(std::move(symbol), std::move(relation), std::move(ids));
}

std::vector<int> Instance::distinct_scope(std::size_t c) const {
  std::vector<int> out;
  for (int v : constraints_[c].scope) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

bool operator==(const Instance& a, const Instance& b) {
  if (a.names_ != b.names_ || a.constraints_.size() != b.constraints_.size()) return false;
  for (std::size_t i = 0; i < a.constraints_.size(); ++i) {
    const auto& x = a.constraints_[i];
    const auto& y = b.constraints_[i];
    if (x.symbol != y.symbol || x.scope != y.scope) return false;
    if (x.relation != y.relation && !(*x.relation == *y.relation)) return false;
  }
  return true;
}

std::string Instance::to_string() const {
  std::string out;
  for (const auto& c : constraints_) {
    out += c.symbol + "(";
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      if (i) out += ',';
      out += name(c.scope[i]);
    }
    out += ")\n";
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool starts_with_word(std::string_view line, std::string_view word) {
  return line.substr(0, word.size()) == word &&
         (line.size() == word.size() || std::isspace(static_cast<unsigned char>(line[word.size()])));
}

}  // namespace

Instance parse_instance(std::string_view text, const Template& tmpl) {
  Instance inst;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty() || starts_with_word(line, "template")) continue;
    const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data());

    if (starts_with_word(line, "vars")) {
      std::istringstream names{std::string(line.substr(4))};
      std::string v;
      while (names >> v) {
        if (!valid_name(v)) throw ParseError("invalid variable name '" + v + "'", line_no, indent);
        inst.add_variable(v);
      }
      continue;
    }

    const std::size_t open = line.find('(');
    if (open == std::string_view::npos || line.back() != ')') {
      throw ParseError("expected SYMBOL(v1,...,vk)", line_no, indent);
    }
    std::string symbol(trim(line.substr(0, open)));
    if (!valid_name(symbol)) throw ParseError("invalid relation symbol '" + symbol + "'", line_no, indent);
    const auto relation = tmpl.find(symbol);
    if (!relation) {
      throw UnknownSymbolError("line " + std::to_string(line_no) + ": unknown relation symbol '" + symbol + "'");
    }
    std::vector<std::string> args;
    std::string_view inner = line.substr(open + 1, line.size() - open - 2);
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = inner.find(',', pos);
      std::string_view arg = trim(inner.substr(pos, comma == std::string_view::npos ? inner.npos : comma - pos));
      if (!valid_name(arg)) {
        throw ParseError("invalid variable name '" + std::string(arg) + "'", line_no, indent + open + 1 + pos);
      }
      args.emplace_back(arg);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (args.size() != relation->arity()) {
      throw ArityError("line " + std::to_string(line_no) + ": " + symbol + " takes " +
                       std::to_string(relation->arity()) + " arguments, got " + std::to_string(args.size()));
    }
    inst.add_constraint(symbol, relation, args);
  }
  return inst;
}

VarPartition::VarPartition(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

int VarPartition::find(int x) const {
  auto i = static_cast<std::size_t>(x);
  while (parent_[i] != static_cast<int>(i)) {
    parent_[i] = parent_[static_cast<std::size_t>(parent_[i])];
    i = static_cast<std::size_t>(parent_[i]);
  }
  return static_cast<int>(i);
}

bool VarPartition::unite(int a, int b) {
  int ra = find(a);
  int rb = find(b);
  if (ra == rb) return false;
  if (rb < ra) std::swap(ra, rb);
  parent_[static_cast<std::size_t>(rb)] = ra;
  return true;
}

std::vector<VarSet> VarPartition::nontrivial_classes() const {
  std::map<int, VarSet> classes;
  for (std::size_t i = 0; i < parent_.size(); ++i) classes[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<VarSet> out;
  for (auto& [rep, members] : classes) {
    if (members.size() > 1) out.push_back(std::move(members));
  }
  return out;
}

Instance project_instance(const Instance& a, const VarSet& keep) {
  std::vector<char> kept(a.variable_count(), 0);
  for (int v : keep) {
    if (v < 0 || static_cast<std::size_t>(v) >= a.variable_count()) {
      throw PreconditionError("projection to a variable outside the instance");
    }
    kept[static_cast<std::size_t>(v)] = 1;
  }
  Instance out;
  std::vector<int> new_id(a.variable_count(), -1);
  for (std::size_t v = 0; v < a.variable_count(); ++v) {
    if (kept[v]) new_id[v] = out.add_variable(a.variables()[v]);
  }
  std::map<std::pair<const TemporalRelation*, std::vector<int>>, RelationPtr> memo;
  for (const auto& c : a.constraints()) {
    std::vector<int> positions;
    std::vector<int> scope;
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      if (kept[static_cast<std::size_t>(c.scope[i])]) {
        positions.push_back(static_cast<int>(i));
        scope.push_back(new_id[static_cast<std::size_t>(c.scope[i])]);
      }
    }
    if (positions.empty()) continue;
    RelationPtr rel = c.relation;
    if (positions.size() != c.scope.size()) {
      auto& slot = memo[{c.relation.get(), positions}];
      if (!slot) slot = std::make_shared<const TemporalRelation>(pr_rel(*c.relation, positions));
      rel = slot;
    }
    out.add_constraint(c.symbol, rel, std::move(scope));
  }
  return out;
}

Instance contract_instance(const Instance& a, const VarPartition& c) {
  if (c.size() != a.variable_count()) throw PreconditionError("partition does not match the instance");
  Instance out;
  std::vector<int> new_id(a.variable_count(), -1);
  for (std::size_t v = 0; v < a.variable_count(); ++v) {
    if (c.find(static_cast<int>(v)) == static_cast<int>(v)) new_id[v] = out.add_variable(a.variables()[v]);
  }
  std::map<std::pair<const TemporalRelation*, std::vector<int>>, RelationPtr> memo;
  for (const auto& con : a.constraints()) {
    std::vector<int> scope;
    for (int v : con.scope) scope.push_back(new_id[static_cast<std::size_t>(c.find(v))]);
    bool repeated = false;
    for (std::size_t i = 0; i < scope.size() && !repeated; ++i) {
      repeated = std::find(scope.begin() + static_cast<std::ptrdiff_t>(i) + 1, scope.end(), scope[i]) != scope.end();
    }
    RelationPtr rel = con.relation;
    if (repeated) {
      auto& slot = memo[{con.relation.get(), scope}];
      if (!slot) slot = std::make_shared<const TemporalRelation>(con_rel(*con.relation, scope));
      rel = slot;
    }
    out.add_constraint(con.symbol, rel, std::move(scope));
  }
  return out;
}

Instance dual_instance(const Instance& a) {
  Instance out;
  for (const auto& v : a.variables()) out.add_variable(v);
  std::map<const TemporalRelation*, RelationPtr> memo;
  for (const auto& c : a.constraints()) {
    auto& slot = memo[c.relation.get()];
    if (!slot) slot = std::make_shared<const TemporalRelation>(dual_rel(*c.relation));
    out.add_constraint(c.symbol, slot, c.scope);
  }
  return out;
}

namespace {

// A constraint seen through its distinct variables: min-sets as bit masks
// over positions of `vars`.
struct LocalView {
  std::vector<int> vars;
  std::vector<std::uint32_t> masks;
};

LocalView local_view(const TemporalRelation& r, const std::vector<int>& scope) {
  if (scope.size() != r.arity()) throw ArityError("scope does not match the relation arity");
  LocalView view;
  std::vector<int> local(scope.size());
  for (std::size_t i = 0; i < scope.size(); ++i) {
    auto it = std::find(view.vars.begin(), view.vars.end(), scope[i]);
    if (it == view.vars.end()) {
      local[i] = static_cast<int>(view.vars.size());
      view.vars.push_back(scope[i]);
    } else {
      local[i] = static_cast<int>(it - view.vars.begin());
    }
  }
  for (const auto& t : r.orbits()) {
    const std::uint32_t positions = chi(t).mask();
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < scope.size(); ++i) {
      if ((positions >> i) & 1u) m |= 1u << local[i];
    }
    // Every occurrence of a variable in M must be a minimal position.
    bool consistent = true;
    for (std::size_t i = 0; i < scope.size() && consistent; ++i) {
      consistent = (((positions >> i) & 1u) != 0) == (((m >> local[i]) & 1u) != 0);
    }
    if (consistent && std::find(view.masks.begin(), view.masks.end(), m) == view.masks.end()) {
      view.masks.push_back(m);
    }
  }
  return view;
}

std::vector<LocalView> local_views(const Instance& a) {
  std::vector<LocalView> out;
  out.reserve(a.constraints().size());
  for (const auto& c : a.constraints()) out.push_back(local_view(*c.relation, c.scope));
  return out;
}

VarSet to_set(const LocalView& view, std::uint32_t mask) {
  VarSet out;
  for (std::size_t i = 0; i < view.vars.size(); ++i) {
    if ((mask >> i) & 1u) out.push_back(view.vars[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint32_t to_mask(const LocalView& view, const VarSet& v) {
  std::uint32_t m = 0;
  for (int x : v) {
    auto it = std::find(view.vars.begin(), view.vars.end(), x);
    if (it == view.vars.end()) throw PreconditionError("variable set is not contained in the constraint scope");
    m |= 1u << (it - view.vars.begin());
  }
  return m;
}

std::uint32_t restrict_mask(const LocalView& view, const std::vector<char>& in) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < view.vars.size(); ++i) {
    if (in[static_cast<std::size_t>(view.vars[i])]) m |= 1u << i;
  }
  return m;
}

std::vector<VarSet> masks_to_sets(const LocalView& view, const std::vector<std::uint32_t>& masks) {
  std::vector<VarSet> out;
  for (auto m : masks) out.push_back(to_set(view, m));
  std::sort(out.begin(), out.end());
  return out;
}

VarSet members(const std::vector<char>& in) {
  VarSet out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool free_under(const std::vector<LocalView>& views, const std::vector<char>& in) {
  for (const auto& view : views) {
    const std::uint32_t u = restrict_mask(view, in);
    if (u && std::find(view.masks.begin(), view.masks.end(), u) == view.masks.end()) return false;
  }
  return true;
}

}  // namespace

std::vector<VarSet> minsystem(const TemporalRelation& r, const std::vector<int>& scope) {
  const auto view = local_view(r, scope);
  return masks_to_sets(view, view.masks);
}

std::vector<VarSet> ideal(const TemporalRelation& r, const VarSet& v, const std::vector<int>& scope) {
  const auto view = local_view(r, scope);
  const std::uint32_t u = to_mask(view, v);
  std::vector<std::uint32_t> out;
  for (auto m : view.masks) {
    if ((m & ~u) == 0) out.push_back(m);
  }
  return masks_to_sets(view, out);
}

std::vector<VarSet> filter(const TemporalRelation& r, const VarSet& v, const std::vector<int>& scope) {
  const auto view = local_view(r, scope);
  const std::uint32_t u = to_mask(view, v);
  std::vector<std::uint32_t> out;
  for (auto m : view.masks) {
    if ((u & ~m) == 0) out.push_back(m);
  }
  return masks_to_sets(view, out);
}

bool is_free_set(const Instance& a, const VarSet& f) {
  if (f.empty()) throw PreconditionError("free sets are non-empty");
  std::vector<char> in(a.variable_count(), 0);
  for (int v : f) {
    if (v < 0 || static_cast<std::size_t>(v) >= in.size()) throw PreconditionError("variable outside the instance");
    in[static_cast<std::size_t>(v)] = 1;
  }
  return free_under(local_views(a), in);
}

std::vector<VarSet> all_free_sets_bruteforce(const Instance& a) {
  const std::size_t n = a.variable_count();
  if (n > kMaxBruteforceFreeSetVars) {
    throw SizeLimitError("brute-force free-set search", n, kMaxBruteforceFreeSetVars);
  }
  const auto views = local_views(a);
  std::vector<VarSet> out;
  std::vector<char> in(n);
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    for (std::size_t i = 0; i < n; ++i) in[i] = (s >> i) & 1u;
    if (free_under(views, in)) out.push_back(members(in));
  }
  std::sort(out.begin(), out.end());
  return out;
}

VarSet union_free_min(const Instance& a) {
  const auto views = local_views(a);
  std::vector<char> in(a.variable_count(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& view : views) {
      const std::uint32_t u = restrict_mask(view, in);
      if (!u) continue;
      std::uint32_t keep = 0;
      for (auto m : view.masks) {
        if ((m & ~u) == 0) keep |= m;
      }
      for (std::size_t i = 0; i < view.vars.size(); ++i) {
        if (((u >> i) & 1u) && !((keep >> i) & 1u)) {
          in[static_cast<std::size_t>(view.vars[i])] = 0;
          changed = true;
        }
      }
    }
  }
  return members(in);
}

MiComponents free_components_mi(const Instance& a) {
  const auto views = local_views(a);
  const std::size_t n = a.variable_count();
  MiComponents out;
  out.components.resize(n);
  std::vector<char> united(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<char> in(n, 0);
    in[x] = 1;
    bool alive = true;
    bool changed = true;
    while (alive && changed) {
      changed = false;
      for (const auto& view : views) {
        const std::uint32_t u = restrict_mask(view, in);
        if (!u) continue;
        std::uint32_t meet = ~std::uint32_t{0};
        bool any = false;
        for (auto m : view.masks) {
          if ((u & ~m) == 0) {
            meet &= m;
            any = true;
          }
        }
        if (!any) {
          alive = false;
          break;
        }
        for (std::size_t i = 0; i < view.vars.size(); ++i) {
          auto& slot = in[static_cast<std::size_t>(view.vars[i])];
          if (((meet >> i) & 1u) && !slot) {
            slot = 1;
            changed = true;
          }
        }
      }
    }
    if (!alive) continue;
    out.components[x] = members(in);
    for (std::size_t i = 0; i < n; ++i) united[i] |= in[i];
  }
  out.united = members(united);
  return out;
}

VarSet union_free_mx(const Instance& a) {
  const std::size_t n = a.variable_count();
  Gf2System e{Gf2Matrix(0, n), {}, a.variables()};
  for (const auto& view : local_views(a)) {
    std::vector<std::vector<bool>> vectors;
    for (auto m : view.masks) {
      std::vector<bool> v(view.vars.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = (m >> i) & 1u;
      vectors.push_back(std::move(v));
    }
    const Gf2Matrix eqs = nullspace_basis(vectors, view.vars.size());
    for (std::size_t r = 0; r < eqs.rows(); ++r) {
      std::vector<std::size_t> vars;
      for (std::size_t i = 0; i < eqs.cols(); ++i) {
        if (eqs.get(r, i)) vars.push_back(static_cast<std::size_t>(view.vars[i]));
      }
      e.add_equation(vars, false);
    }
  }
  VarSet out;
  for (std::size_t x = 0; x < n; ++x) {
    Gf2System with_x = e;
    with_x.add_equation({x}, true);
    if (solvable(with_x)) out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<VarSet> irreducible_free_sets(const Instance& a) {
  const auto comps = free_components_mi(a).components;
  std::vector<VarSet> out;
  for (const auto& f : comps) {
    if (f.empty()) continue;
    const bool has_smaller = std::any_of(comps.begin(), comps.end(), [&](const VarSet& g) {
      return !g.empty() && g.size() < f.size() && std::includes(f.begin(), f.end(), g.begin(), g.end());
    });
    if (!has_smaller && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tcsp
