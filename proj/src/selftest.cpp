#include "tcsp/selftest.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tcsp/io.hpp"
#include "tcsp/pp_formula.hpp"
#include "tcsp/solver.hpp"

namespace tcsp {

namespace {

bool parity_even(const OrderTuple& t, std::uint32_t positions) {
  return __builtin_popcount(chi(t).mask() & positions) % 2 == 0;
}

std::uint32_t first_k(std::size_t k) { return (1u << k) - 1; }

const char* const kMinChain = R"(
RminLeq/3 = name: RminLeq
le2/3 = pp: (x,z1,z2): RminLeq(x,z1,z2)
le3/4 = pp: (x,z1,z2,z3): exists h. RminLeq(x,z1,h) & le2(h,z2,z3)
le4/5 = pp: (x,z1,z2,z3,z4): exists h. RminLeq(x,z1,h) & le3(h,z2,z3,z4)
le5/6 = pp: (x,z1,z2,z3,z4,z5): exists h. RminLeq(x,z1,h) & le4(h,z2,z3,z4,z5)
)";

const char* const kXChain = R"(
X/3 = name: X
lt/2 = pp: (x,y): X(x,x,y)
m34/4 = pp: (x1,x2,x3,x4): exists a1,a2,a3,b1,b2,b3. lt(x4,b1) & lt(x4,b2) & lt(x4,b3) & X(a1,a2,a3) & X(x1,a1,b1) & X(x2,a2,b2) & X(x3,a3,b3)
m23/3 = pp: (x1,x2,x3): exists h. m34(x1,x2,h,x3) & lt(x1,h)
m13/3 = pp: (x1,x2,x3): exists h2,h3. m23(x1,h2,x3) & lt(x2,h2) & m23(x1,h3,x2) & lt(x3,h3)
m14/4 = pp: (h,x1,x2,x3): exists g. m13(h,x1,g) & m13(g,x2,x3)
m15/5 = pp: (h,x1,x2,x3,x4): exists g. m13(h,x1,g) & m14(g,x2,x3,x4)
m45/5 = pp: (x1,x2,x3,x4,y): exists h2. m34(x1,x2,h2,y) & m34(h2,x3,x4,y)
m24/4 = pp: (x1,x2,x3,x4): exists h. m23(x1,x2,h) & m15(h,x1,x2,x3,x4)
)";

const char* const kMiChain = R"(
Rmi/3 = name: Rmi
Smi/3 = name: Smi
neq/2 = name: neq
leq/2 = pp: (a,b): Rmi(b,b,a)
p20/4 = pp: (x,y1,y2,y): exists h. Rmi(h,y2,y) & Rmi(x,y1,h)
p02/4 = pp: (x,z1,z2,y): exists h. Smi(h,z2,y) & Smi(x,z1,h) & leq(x,h)
p11/4 = pp: (x,y1,z1,y): exists h. Smi(x,z1,h) & Rmi(h,y1,y)
)";

const char* const kLlChain = R"(
Rll/3 = name: Rll
Sll/4 = name: Sll
neq/2 = name: neq
q11/4 = pp: (x1,y1,z,z1): Sll(x1,y1,z1,z)
q21/6 = pp: (x1,y1,x2,y2,z,z1): exists a,b. q11(x1,y1,a,b) & q11(x2,y2,b,a) & q11(a,b,z,z1)
q03/4 = pp: (z,z1,z2,z3): exists h. Rll(h,z2,z3) & Rll(z,z1,h)
q12/5 = pp: (x1,y1,z,z1,z2): exists h. Rll(h,z1,z2) & q11(x1,y1,z,h)
)";

const char* const kBetw = R"(
Betw/3 = name: Betw
lt/2 = name: lt
rmin/3 = pp: (x,y,z): exists a,b. Betw(a,x,b) & lt(y,a) & lt(z,b)
nrmin/3 = pp: (x,y,z): exists a,b. Betw(a,x,b) & lt(a,y) & lt(b,z)
)";

// Some z_i <= x, with x first.
bool some_leq_first(const OrderTuple& t) {
  for (std::size_t i = 1; i < t.arity(); ++i) {
    if (t[i] <= t[0]) return true;
  }
  return false;
}

// ll clause over x1,y1,...,xm,ym,z,z1..zn with the all-equal disjunct.
bool ll_clause(const OrderTuple& t, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    if (t[2 * i] != t[2 * i + 1]) return true;
  }
  const std::size_t z = 2 * m;
  bool all_equal = true;
  for (std::size_t i = z + 1; i < t.arity(); ++i) {
    if (t[i] < t[z]) return true;
    all_equal = all_equal && t[i] == t[z];
  }
  return all_equal;
}

}  // namespace

const std::vector<LemmaCase>& lemma_cases() {
  static const std::vector<LemmaCase> cases = [] {
    std::vector<LemmaCase> c;
    for (std::size_t n = 2; n <= 5; ++n) {
      c.push_back({"leq-min chain, " + std::to_string(n) + " lower bounds", kMinChain, "le" + std::to_string(n),
                   n + 1, some_leq_first});
    }
    c.push_back({"X defines <", kXChain, "lt", 2, [](const OrderTuple& t) { return t[0] < t[1]; }});
    c.push_back({"X defines parity [3] of 4", kXChain, "m34", 4,
                 [](const OrderTuple& t) { return parity_even(t, first_k(3)); }});
    c.push_back({"X defines parity [2] of 3", kXChain, "m23", 3,
                 [](const OrderTuple& t) { return parity_even(t, first_k(2)); }});
    for (std::size_t n = 3; n <= 5; ++n) {
      c.push_back({"X defines parity {1} of " + std::to_string(n), kXChain, "m1" + std::to_string(n), n,
                   [](const OrderTuple& t) { return parity_even(t, 1u); }});
    }
    c.push_back({"X defines parity [4] of 5", kXChain, "m45", 5,
                 [](const OrderTuple& t) { return parity_even(t, first_k(4)); }});
    c.push_back({"X defines parity [2] of 4", kXChain, "m24", 4,
                 [](const OrderTuple& t) { return parity_even(t, first_k(2)); }});
    // mi clause over x, y1..ym, z1..zn, y: some z != x, some y_i < x, or y <= x.
    auto mi_clause = [](std::size_t m, std::size_t n) {
      return [m, n](const OrderTuple& t) {
        for (std::size_t i = 1; i <= m; ++i) {
          if (t[i] < t[0]) return true;
        }
        for (std::size_t i = m + 1; i <= m + n; ++i) {
          if (t[i] != t[0]) return true;
        }
        return t[m + n + 1] <= t[0];
      };
    };
    c.push_back({"mi clause (2,0)", kMiChain, "p20", 4, mi_clause(2, 0)});
    c.push_back({"mi clause (0,2)", kMiChain, "p02", 4, mi_clause(0, 2)});
    c.push_back({"mi clause (1,1)", kMiChain, "p11", 4, mi_clause(1, 1)});
    c.push_back({"ll clause (1,1)", kLlChain, "q11", 4, [](const OrderTuple& t) { return ll_clause(t, 1); }});
    c.push_back({"ll clause (2,1)", kLlChain, "q21", 6, [](const OrderTuple& t) { return ll_clause(t, 2); }});
    c.push_back({"ll clause (0,3)", kLlChain, "q03", 4, [](const OrderTuple& t) { return ll_clause(t, 0); }});
    c.push_back({"ll clause (1,2)", kLlChain, "q12", 5, [](const OrderTuple& t) { return ll_clause(t, 1); }});
    c.push_back({"Betw and < define Rmin", kBetw, "rmin", 3,
                 [](const OrderTuple& t) { return t[1] < t[0] || t[2] < t[0]; }});
    c.push_back({"Betw and < define -Rmin", kBetw, "nrmin", 3,
                 [](const OrderTuple& t) { return t[1] > t[0] || t[2] > t[0]; }});
    return c;
  }();
  return cases;
}

const std::vector<TemplateFamily>& template_families() {
  static const std::vector<TemplateFamily> families = [] {
    std::vector<TemplateFamily> f;
    f.push_back({"min", Template::from_library({"RminLeq", "lt"}), FreeSetAlgorithm::Min});
    f.push_back({"mi", Template::from_library({"Rmi", "Smi", "neq"}), FreeSetAlgorithm::Mi});
    f.push_back({"mx", Template::from_library({"X"}), FreeSetAlgorithm::Mx});
    f.push_back({"ll", Template::from_library({"Rll", "Sll", "neq"}), FreeSetAlgorithm::Mi});
    f.push_back({"ord-horn", Template::from_library({"leq", "neq"}), FreeSetAlgorithm::None});
    Template dual_min;
    dual_min.add("nRmin", dual_rel(named("Rmin")));
    dual_min.add("lt", named("lt"));
    f.push_back({"dual-min", std::move(dual_min), FreeSetAlgorithm::None});
    return f;
  }();
  return families;
}

namespace {

struct Atom {
  std::size_t symbol;
  std::vector<int> scope;
};

std::vector<Atom> all_atoms(const Template& tmpl, std::size_t vars) {
  std::vector<Atom> out;
  for (std::size_t s = 0; s < tmpl.size(); ++s) {
    const std::size_t k = tmpl.entries()[s].relation->arity();
    std::vector<int> scope(k, 0);
    while (true) {
      out.push_back({s, scope});
      std::size_t i = k;
      while (i > 0 && scope[i - 1] == static_cast<int>(vars) - 1) scope[--i] = 0;
      if (i == 0) break;
      ++scope[i - 1];
    }
  }
  return out;
}

const std::string& var_name(int v) {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (char c = 'a'; c <= 'z'; ++c) n.emplace_back(1, c);
    return n;
  }();
  return names[static_cast<std::size_t>(v)];
}

Instance build(const Template& tmpl, const std::vector<Atom>& atoms, const std::vector<std::size_t>& chosen,
               std::size_t vars) {
  std::vector<char> used(vars, 0);
  for (auto i : chosen) {
    for (int v : atoms[i].scope) used[static_cast<std::size_t>(v)] = 1;
  }
  Instance inst;
  for (std::size_t v = 0; v < vars; ++v) {
    if (used[v]) inst.add_variable(var_name(static_cast<int>(v)));
  }
  for (auto i : chosen) {
    const auto& e = tmpl.entries()[atoms[i].symbol];
    std::vector<std::string> scope;
    for (int v : atoms[i].scope) scope.push_back(var_name(v));
    inst.add_constraint(e.symbol, e.relation, scope);
  }
  return inst;
}

}  // namespace

void for_each_small_instance(const Template& tmpl, std::size_t max_vars, std::size_t max_constraints,
                             const std::function<void(const Instance&)>& f) {
  const auto atoms = all_atoms(tmpl, max_vars);
  std::map<std::pair<std::size_t, std::vector<int>>, std::size_t> index;
  for (std::size_t i = 0; i < atoms.size(); ++i) index[{atoms[i].symbol, atoms[i].scope}] = i;

  std::vector<std::vector<int>> perms;
  std::vector<int> p(max_vars);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  // renamed[q][i]: index of atom i after applying permutation q.
  std::vector<std::vector<std::size_t>> renamed(perms.size(), std::vector<std::size_t>(atoms.size()));
  for (std::size_t q = 0; q < perms.size(); ++q) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      std::vector<int> scope;
      for (int v : atoms[i].scope) scope.push_back(perms[q][static_cast<std::size_t>(v)]);
      renamed[q][i] = index.at({atoms[i].symbol, scope});
    }
  }

  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    bool canonical = true;
    std::vector<std::size_t> image;
    for (std::size_t q = 1; q < perms.size() && canonical; ++q) {
      image.clear();
      for (auto i : chosen) image.push_back(renamed[q][i]);
      std::sort(image.begin(), image.end());
      canonical = !(image < chosen);
    }
    if (canonical) f(build(tmpl, atoms, chosen, max_vars));
    if (chosen.size() == max_constraints) return;
    for (std::size_t i = start; i < atoms.size(); ++i) {
      chosen.push_back(i);
      rec(i);
      chosen.pop_back();
    }
  };
  rec(0);
}

Instance random_instance(const Template& tmpl, std::mt19937_64& rng, std::size_t max_vars,
                         std::size_t max_constraints) {
  std::uniform_int_distribution<std::size_t> count(1, max_constraints);
  std::uniform_int_distribution<std::size_t> symbol(0, tmpl.size() - 1);
  std::uniform_int_distribution<int> var(0, static_cast<int>(max_vars) - 1);
  std::vector<Atom> atoms;
  std::vector<std::size_t> chosen;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Atom a{symbol(rng), {}};
    for (std::size_t j = 0; j < tmpl.entries()[a.symbol].relation->arity(); ++j) a.scope.push_back(var(rng));
    atoms.push_back(std::move(a));
    chosen.push_back(i);
  }
  return build(tmpl, atoms, chosen, max_vars);
}

VarSet fast_free_union(FreeSetAlgorithm algorithm, const Instance& a) {
  switch (algorithm) {
    case FreeSetAlgorithm::Min:
      return union_free_min(a);
    case FreeSetAlgorithm::Mi:
      return free_components_mi(a).united;
    case FreeSetAlgorithm::Mx:
      return union_free_mx(a);
    case FreeSetAlgorithm::None:
      break;
  }
  return {};
}

void SuiteResult::record(bool ok, const std::string& what) {
  if (ok) {
    ++passed;
    return;
  }
  ++failed;
  if (failures.size() < 10) failures.push_back(what);
}

SuiteResult run_lemma_suite() {
  SuiteResult result{"pp-definitions", 0, 0, {}};
  for (const auto& c : lemma_cases()) {
    try {
      const Template t = parse_template(c.template_text);
      const auto expected = TemporalRelation::from_predicate(c.arity, c.expected);
      result.record(*t.at(c.symbol) == expected, c.name);
    } catch (const std::exception& e) {
      result.record(false, c.name + ": " + e.what());
    }
  }
  return result;
}

namespace {

template <typename F>
void for_each_corpus_instance(const TemplateFamily& family, std::size_t random_count, std::uint64_t seed, F&& f) {
  for_each_small_instance(family.tmpl, 3, 3, f);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) f(random_instance(family.tmpl, rng, 5, 6));
}

}  // namespace

SuiteResult run_oracle_suite(std::size_t random_count, std::uint64_t seed) {
  SuiteResult result{"solver vs oracle", 0, 0, {}};
  for (const auto& family : template_families()) {
    const Dispatcher dispatcher(family.tmpl);
    for_each_corpus_instance(family, random_count, seed, [&](const Instance& a) {
      const bool fast = dispatcher.solve(a).satisfiable;
      const Verdict slow = oracle_solve(a);
      bool ok = fast == slow.satisfiable;
      if (ok && slow.witness) ok = check_solution(a, *slow.witness);
      result.record(ok, family.name + ":\n" + a.to_string());
    });
  }
  return result;
}

SuiteResult run_free_set_suite(std::size_t random_count, std::uint64_t seed) {
  SuiteResult result{"free-set unions vs brute force", 0, 0, {}};
  for (const auto& family : template_families()) {
    if (family.free_sets == FreeSetAlgorithm::None) continue;
    for_each_corpus_instance(family, random_count, seed, [&](const Instance& a) {
      VarSet expected;
      for (const auto& s : all_free_sets_bruteforce(a)) expected.insert(expected.end(), s.begin(), s.end());
      std::sort(expected.begin(), expected.end());
      expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
      result.record(fast_free_union(family.free_sets, a) == expected, family.name + ":\n" + a.to_string());
    });
  }
  return result;
}

}  // namespace tcsp
