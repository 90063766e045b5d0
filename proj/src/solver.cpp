#include "tcsp/solver.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <set>

#include "tcsp/error.hpp"
#include "tcsp/reference.hpp"

namespace tcsp {

namespace {

std::vector<std::string> names_of(const Instance& a, const VarSet& s) {
  std::vector<std::string> out;
  for (int v : s) out.push_back(a.name(v));
  return out;
}

VarSet complement(const Instance& a, const VarSet& s) {
  VarSet out;
  for (int v = 0; v < static_cast<int>(a.variable_count()); ++v) {
    if (!std::binary_search(s.begin(), s.end(), v)) out.push_back(v);
  }
  return out;
}

// The ll test costs a good fraction of a second on arity-4 relations, and
// callers run many instances over one template.
bool preserved_by_ll(const TemporalRelation& r) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::vector<OrderTuple>>, bool> cache;
  auto key = std::make_pair(r.arity(), r.orbits());
  {
    const std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const bool result = preserves(r, PolyOp{OpKind::Ll, false});
  const std::lock_guard lock(mutex);
  if (cache.size() >= 256) cache.clear();
  cache.emplace(std::move(key), result);
  return result;
}

Verdict run_ll(const Instance& a0) {
  Verdict verdict;
  VarPartition c(a0.variable_count());
  Instance current = contract_instance(a0, c);
  while (true) {
    Instance work = current;
    while (true) {
      const auto irreducible = irreducible_free_sets(work);
      if (irreducible.empty()) break;
      TraceStep step{"irreducible", {}};
      VarSet removed;
      for (const auto& f : irreducible) {
        step.sets.push_back(names_of(work, f));
        const int first = a0.find_variable(work.name(f.front()));
        for (int v : f) c.unite(first, a0.find_variable(work.name(v)));
        removed.insert(removed.end(), f.begin(), f.end());
      }
      std::sort(removed.begin(), removed.end());
      verdict.trace.push_back(std::move(step));
      work = project_instance(work, complement(work, removed));
    }
    if (work.variable_count() > 0) {
      verdict.satisfiable = false;
      return verdict;
    }
    Instance next = contract_instance(a0, c);
    if (next == current) {
      verdict.satisfiable = true;
      return verdict;
    }
    TraceStep step{"contract", {}};
    for (const auto& cls : c.nontrivial_classes()) step.sets.push_back(names_of(a0, cls));
    verdict.trace.push_back(std::move(step));
    current = std::move(next);
  }
}

bool all_equal_allowed(const Instance& a) {
  return std::all_of(a.constraints().begin(), a.constraints().end(), [](const Constraint& c) {
    std::vector<int> zeros(c.scope.size(), 0);
    return c.relation->contains(normalize(zeros));
  });
}

// Constraint checks for a search that places variables in id order: each
// constraint is tested once its largest variable has a value.
std::vector<std::vector<const Constraint*>> checks_by_depth(const Instance& a) {
  std::vector<std::vector<const Constraint*>> out(a.variable_count());
  for (const auto& c : a.constraints()) {
    const int last = *std::max_element(c.scope.begin(), c.scope.end());
    out[static_cast<std::size_t>(last)].push_back(&c);
  }
  return out;
}

bool satisfied(const Constraint& c, const WeakOrderBuilder& b) {
  std::array<int, kMaxTupleArity> raw{};
  for (std::size_t i = 0; i < c.scope.size(); ++i) raw[i] = b.rank(static_cast<std::size_t>(c.scope[i]));
  return c.relation->contains(normalize(std::span<const int>(raw.data(), c.scope.size())));
}

class OracleSearch {
 public:
  explicit OracleSearch(const Instance& a) : n_(a.variable_count()), checks_(checks_by_depth(a)) {}

  // Prefixes of length `depth` that pass every check they can, in DFS order.
  std::vector<OrderTuple> prefixes(std::size_t depth) const {
    std::vector<OrderTuple> out;
    WeakOrderBuilder b;
    collect(b, depth, out);
    return out;
  }

  std::optional<OrderTuple> extend(const OrderTuple& prefix) const {
    WeakOrderBuilder b;
    b.reset(prefix);
    if (dfs(b)) return b.tuple();
    return std::nullopt;
  }

 private:
  bool passes(const WeakOrderBuilder& b) const {
    const auto& list = checks_[b.size() - 1];
    return std::all_of(list.begin(), list.end(), [&](const Constraint* c) { return satisfied(*c, b); });
  }

  template <typename F>
  bool branch(WeakOrderBuilder& b, F&& f) const {
    const int levels = b.levels();
    for (int level = 0; level < levels; ++level) {
      b.push_into(level);
      if (passes(b) && f()) return true;
      b.pop();
    }
    for (int gap = 0; gap <= levels; ++gap) {
      b.push_new(gap);
      if (passes(b) && f()) return true;
      b.pop();
    }
    return false;
  }

  void collect(WeakOrderBuilder& b, std::size_t depth, std::vector<OrderTuple>& out) const {
    if (b.size() == depth) {
      out.push_back(b.tuple());
      return;
    }
    branch(b, [&] {
      collect(b, depth, out);
      return false;
    });
  }

  // Leaves the builder holding the solution on success.
  bool dfs(WeakOrderBuilder& b) const {
    if (b.size() == n_) return true;
    return branch(b, [&] { return dfs(b); });
  }

  std::size_t n_;
  std::vector<std::vector<const Constraint*>> checks_;
};

Assignment to_assignment(const Instance& a, const OrderTuple& t) {
  Assignment out;
  for (std::size_t v = 0; v < a.variable_count(); ++v) out[a.variables()[v]] = t[v];
  return out;
}

void check_oracle_size(const Instance& a, std::size_t max_vars) {
  const std::size_t limit = std::min(max_vars, kMaxEnumerationArity);
  if (a.variable_count() > limit) throw SizeLimitError("oracle variable count", a.variable_count(), limit);
}

}  // namespace

Verdict solve_projection_loop(const Instance& a, const FreeSetFn& freeset_fn) {
  Verdict verdict;
  Instance current = a;
  while (current.variable_count() > 0) {
    const VarSet s = freeset_fn(current);
    if (s.empty()) break;
    verdict.trace.push_back({"project", {names_of(current, s)}});
    current = project_instance(current, complement(current, s));
  }
  verdict.satisfiable = current.variable_count() == 0;
  return verdict;
}

Verdict solve_ll(const Instance& a) {
  std::set<const TemporalRelation*> checked;
  for (const auto& c : a.constraints()) {
    if (!checked.insert(c.relation.get()).second) continue;
    if (!preserved_by_ll(*c.relation)) {
      throw PreconditionError("relation of " + c.symbol + " is not preserved by ll");
    }
  }
  return run_ll(a);
}

Dispatcher::Dispatcher(const Template& t, SolveOptions options)
    : Dispatcher(t, classify(t), options) {}

Dispatcher::Dispatcher(const Template&, Classification c, SolveOptions options)
    : classification_(std::move(c)), options_(options) {
  choose();
}

void Dispatcher::choose() {
  static const std::array<PolyOp, 9> priority{{
      {OpKind::Constant, false},
      {OpKind::Min, false},
      {OpKind::Mx, false},
      {OpKind::Mi, false},
      {OpKind::Ll, false},
      {OpKind::Min, true},
      {OpKind::Mx, true},
      {OpKind::Mi, true},
      {OpKind::Ll, true},
  }};
  for (const auto& op : priority) {
    if (classification_.preserved_by(op)) {
      op_ = op;
      algorithm_ = op.name();
      return;
    }
  }
  if (options_.allow_oracle) algorithm_ = "oracle";
}

Verdict Dispatcher::solve(const Instance& a) const {
  if (!op_) {
    if (!options_.allow_oracle) {
      throw NpHardTemplateError("the template is in the NP-complete case; use the oracle");
    }
    return oracle_solve(a, options_.max_oracle_vars);
  }
  if (op_->kind == OpKind::Constant) {
    Verdict v;
    v.satisfiable = all_equal_allowed(a);
    if (v.satisfiable) {
      Assignment w;
      for (const auto& name : a.variables()) w[name] = 0;
      v.witness = std::move(w);
    }
    return v;
  }
  const Instance input = op_->dualized ? dual_instance(a) : a;
  switch (op_->kind) {
    case OpKind::Min:
      return solve_projection_loop(input, union_free_min);
    case OpKind::Mx:
      return solve_projection_loop(input, union_free_mx);
    case OpKind::Mi:
      return solve_projection_loop(input, [](const Instance& i) { return free_components_mi(i).united; });
    case OpKind::Ll:
      return run_ll(input);
    default:
      break;
  }
  throw PreconditionError("no algorithm for operation " + op_->name());
}

Verdict solve(const Instance& a, const Template& t, const SolveOptions& options) {
  return Dispatcher(t, options).solve(a);
}

Verdict oracle_solve(const Instance& a, std::size_t max_vars) {
  check_oracle_size(a, max_vars);
  Verdict verdict;
  const OracleSearch search(a);
  const auto prefixes = search.prefixes(std::min<std::size_t>(a.variable_count(), 3));
  const auto count = static_cast<std::ptrdiff_t>(prefixes.size());
  std::vector<std::optional<OrderTuple>> found(prefixes.size());
  std::atomic<std::ptrdiff_t> best{std::numeric_limits<std::ptrdiff_t>::max()};
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    if (i > best.load(std::memory_order_relaxed)) continue;
    auto w = search.extend(prefixes[static_cast<std::size_t>(i)]);
    if (!w) continue;
    found[static_cast<std::size_t>(i)] = std::move(w);
    std::ptrdiff_t cur = best.load();
    while (i < cur && !best.compare_exchange_weak(cur, i)) {
    }
  }
  const std::ptrdiff_t b = best.load();
  if (b != std::numeric_limits<std::ptrdiff_t>::max()) {
    verdict.satisfiable = true;
    verdict.witness = to_assignment(a, *found[static_cast<std::size_t>(b)]);
  }
  return verdict;
}

namespace reference {

Verdict oracle_solve(const Instance& a, std::size_t max_vars) {
  check_oracle_size(a, max_vars);
  Verdict verdict;
  for_each_weak_order(a.variable_count(), [&](const OrderTuple& t) {
    if (verdict.satisfiable) return;
    const bool ok = std::all_of(a.constraints().begin(), a.constraints().end(), [&](const Constraint& c) {
      return c.relation->contains(project_tuple(t, c.scope));
    });
    if (ok) {
      verdict.satisfiable = true;
      verdict.witness = to_assignment(a, t);
    }
  });
  return verdict;
}

}  // namespace reference

bool check_solution(const Instance& a, const Assignment& assignment) {
  std::vector<int> values(a.variable_count());
  for (std::size_t v = 0; v < a.variable_count(); ++v) {
    auto it = assignment.find(a.variables()[v]);
    if (it == assignment.end()) throw PreconditionError("no value for variable " + a.variables()[v]);
    values[v] = it->second;
  }
  return std::all_of(a.constraints().begin(), a.constraints().end(), [&](const Constraint& c) {
    std::vector<int> raw;
    for (int v : c.scope) raw.push_back(values[static_cast<std::size_t>(v)]);
    return c.relation->contains(normalize(raw));
  });
}

Instance xor_instance(const XorSystem& s, const Template& x_template) {
  const auto x = x_template.at("X");
  Instance inst;
  for (const auto& eq : s.equations) inst.add_constraint("X", x, std::vector<std::string>(eq.begin(), eq.end()));
  return inst;
}

bool ord_xor_sat(const XorSystem& s) {
  static const Template x_template = Template::from_library({"X"});
  static const Dispatcher dispatcher(x_template);
  return dispatcher.solve(xor_instance(s, x_template)).satisfiable;
}

}  // namespace tcsp
