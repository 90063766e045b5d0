#include "tcsp/pp_formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "tcsp/error.hpp"
#include "tcsp/reference.hpp"

namespace tcsp {

const std::string& PpFormula::variable_name(int id) const {
  auto i = static_cast<std::size_t>(id);
  return i < free_vars.size() ? free_vars[i] : bound_vars[i - free_vars.size()];
}

std::string PpFormula::to_string() const {
  auto join = [](const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ',';
      out += names[i];
    }
    return out;
  };
  std::string out = "(" + join(free_vars) + ") : ";
  if (!bound_vars.empty()) out += "exists " + join(bound_vars) + ". ";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += " & ";
    const auto& a = atoms[i];
    switch (a.kind) {
      case PpAtom::Kind::Falsum:
        out += "false";
        break;
      case PpAtom::Kind::Equality:
        out += variable_name(a.args[0]) + "=" + variable_name(a.args[1]);
        break;
      case PpAtom::Kind::Relation: {
        out += a.symbol + "(";
        for (std::size_t j = 0; j < a.args.size(); ++j) {
          if (j) out += ',';
          out += variable_name(a.args[j]);
        }
        out += ")";
        break;
      }
    }
  }
  if (atoms.empty()) out += "true";
  return out;
}

namespace {

struct RawAtom {
  PpAtom::Kind kind;
  std::string symbol;
  std::vector<std::string> args;
  std::size_t position;
};

class PpParser {
 public:
  explicit PpParser(std::string_view text) : text_(text) {}

  PpFormula parse() {
    std::optional<std::vector<std::string>> declared;
    skip();
    if (peek() == '(' && looks_like_declaration()) {
      ++pos_;
      declared = ident_list(')');
      expect(')');
      expect(':');
    }
    std::vector<std::string> bound;
    while (keyword("exists")) {
      auto names = ident_list('.');
      if (names.empty()) error("expected a variable after 'exists'");
      bound.insert(bound.end(), names.begin(), names.end());
      expect('.');
    }
    conjunction();
    skip();
    if (pos_ != text_.size()) error("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return build(declared, bound);
  }

 private:
  [[noreturn]] void error(const std::string& message) const { throw ParseError(message, 0, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) error("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool keyword(std::string_view word) {
    skip();
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t end = pos_ + word.size();
    if (end < text_.size() && ident_char(text_[end])) return false;
    pos_ = end;
    return true;
  }

  std::vector<std::string> ident_list(char terminator) {
    std::vector<std::string> out;
    if (peek() == terminator) return out;
    out.push_back(ident());
    while (peek() == ',') {
      ++pos_;
      out.push_back(ident());
    }
    return out;
  }

  // `(a, b) :` versus a parenthesized conjunction `(R(a) & ...)`.
  bool looks_like_declaration() const {
    std::size_t close = text_.find(')', pos_);
    if (close == std::string_view::npos) return false;
    for (std::size_t i = pos_ + 1; i < close; ++i) {
      char c = text_[i];
      if (!(ident_char(c) || c == ',' || std::isspace(static_cast<unsigned char>(c)))) return false;
    }
    std::size_t after = close + 1;
    while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) ++after;
    return after < text_.size() && text_[after] == ':';
  }

  void conjunction() {
    item();
    while (peek() == '&') {
      ++pos_;
      item();
    }
  }

  void item() {
    if (peek() == '(') {
      ++pos_;
      conjunction();
      expect(')');
      return;
    }
    std::size_t start = pos_;
    if (keyword("false")) {
      atoms_.push_back({PpAtom::Kind::Falsum, {}, {}, start});
      return;
    }
    std::string name = ident();
    if (peek() == '(') {
      ++pos_;
      auto args = ident_list(')');
      if (args.empty()) error("relation atom without arguments");
      expect(')');
      atoms_.push_back({PpAtom::Kind::Relation, name, std::move(args), start});
      return;
    }
    if (peek() == '=') {
      ++pos_;
      std::string rhs = ident();
      atoms_.push_back({PpAtom::Kind::Equality, {}, {name, rhs}, start});
      return;
    }
    error("expected '(' or '=' after '" + name + "'");
  }

  PpFormula build(const std::optional<std::vector<std::string>>& declared,
                  const std::vector<std::string>& bound) {
    PpFormula phi;
    std::map<std::string, int> ids;
    auto fail_at = [&](std::size_t position, const std::string& message) {
      throw ParseError(message, 0, position);
    };
    if (declared) {
      for (const auto& v : *declared) {
        if (ids.count(v)) fail_at(0, "free variable '" + v + "' declared twice");
        ids.emplace(v, static_cast<int>(phi.free_vars.size()));
        phi.free_vars.push_back(v);
      }
    }
    std::set<std::string> seen;
    for (const auto& v : bound) {
      if (!seen.insert(v).second) fail_at(0, "bound variable '" + v + "' quantified twice");
      if (declared && ids.count(v)) fail_at(0, "variable '" + v + "' is both free and bound");
    }
    if (!declared) {
      for (const auto& a : atoms_) {
        for (const auto& v : a.args) {
          bool is_bound = std::find(bound.begin(), bound.end(), v) != bound.end();
          if (!is_bound && !ids.count(v)) {
            ids.emplace(v, static_cast<int>(phi.free_vars.size()));
            phi.free_vars.push_back(v);
          }
        }
      }
    }
    for (const auto& v : bound) {
      ids.emplace(v, static_cast<int>(phi.free_vars.size() + phi.bound_vars.size()));
      phi.bound_vars.push_back(v);
    }
    for (const auto& a : atoms_) {
      PpAtom atom;
      atom.kind = a.kind;
      atom.symbol = a.symbol;
      for (const auto& v : a.args) {
        auto it = ids.find(v);
        if (it == ids.end()) fail_at(a.position, "variable '" + v + "' is neither declared free nor bound");
        atom.args.push_back(it->second);
      }
      phi.atoms.push_back(std::move(atom));
    }
    return phi;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<RawAtom> atoms_;
};

struct ResolvedAtom {
  PpAtom::Kind kind;
  const TemporalRelation* relation = nullptr;
  std::vector<int> slots;  // positions in the search order
};

bool atom_holds(const ResolvedAtom& atom, const WeakOrderBuilder& b) {
  switch (atom.kind) {
    case PpAtom::Kind::Falsum:
      return false;
    case PpAtom::Kind::Equality:
      return b.rank(static_cast<std::size_t>(atom.slots[0])) == b.rank(static_cast<std::size_t>(atom.slots[1]));
    case PpAtom::Kind::Relation: {
      std::array<int, kMaxTupleArity> raw{};
      for (std::size_t i = 0; i < atom.slots.size(); ++i) raw[i] = b.rank(static_cast<std::size_t>(atom.slots[i]));
      return atom.relation->contains(normalize(std::span<const int>(raw.data(), atom.slots.size())));
    }
  }
  return false;
}

// Variables placed free first, then bound in an order that closes atoms
// early; every atom is checked at the depth where its last variable lands.
class Search {
 public:
  Search(const PpFormula& phi, const Template& tmpl) : free_count_(phi.free_vars.size()) {
    const std::size_t n = phi.variable_count();
    std::vector<int> order;
    for (std::size_t v = 0; v < free_count_; ++v) order.push_back(static_cast<int>(v));
    std::vector<bool> placed(n, false);
    for (std::size_t v = 0; v < free_count_; ++v) placed[v] = true;
    while (order.size() < n) {
      int best = -1;
      int best_score = -1;
      for (std::size_t v = free_count_; v < n; ++v) {
        if (placed[v]) continue;
        int score = 0;
        for (const auto& a : phi.atoms) {
          bool mentions = std::find(a.args.begin(), a.args.end(), static_cast<int>(v)) != a.args.end();
          if (!mentions) continue;
          bool closes = std::all_of(a.args.begin(), a.args.end(),
                                    [&](int w) { return w == static_cast<int>(v) || placed[static_cast<std::size_t>(w)]; });
          score += closes ? 4 : 1;
        }
        if (score > best_score) {
          best_score = score;
          best = static_cast<int>(v);
        }
      }
      placed[static_cast<std::size_t>(best)] = true;
      order.push_back(best);
    }
    std::vector<int> slot_of(n);
    for (std::size_t i = 0; i < n; ++i) slot_of[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    checks_.resize(n);
    for (const auto& a : phi.atoms) {
      ResolvedAtom r{a.kind, nullptr, {}};
      if (a.kind == PpAtom::Kind::Relation) {
        const auto& rel = tmpl.at(a.symbol);
        if (rel->arity() != a.args.size()) {
          throw ArityError("atom " + a.symbol + " has " + std::to_string(a.args.size()) +
                           " arguments, relation arity is " + std::to_string(rel->arity()));
        }
        r.relation = rel.get();
      }
      int depth = 0;
      for (int v : a.args) {
        r.slots.push_back(slot_of[static_cast<std::size_t>(v)]);
        depth = std::max(depth, slot_of[static_cast<std::size_t>(v)]);
      }
      if (a.kind == PpAtom::Kind::Falsum) {
        falsum_ = true;
        continue;
      }
      checks_[static_cast<std::size_t>(depth)].push_back(std::move(r));
    }
    total_ = n;
  }

  bool falsum() const { return falsum_; }

  // Candidate order types of the free variables that pass all free-only atoms.
  std::vector<OrderTuple> free_candidates() const {
    std::vector<OrderTuple> out;
    WeakOrderBuilder b;
    collect(b, out);
    return out;
  }

  // Whether the free order type extends to a full assignment.
  bool extends(const OrderTuple& free_type) const {
    WeakOrderBuilder b;
    b.reset(free_type);
    return extend(b);
  }

 private:
  bool passes(const WeakOrderBuilder& b) const {
    const auto& list = checks_[b.size() - 1];
    return std::all_of(list.begin(), list.end(), [&](const ResolvedAtom& a) { return atom_holds(a, b); });
  }

  template <typename F>
  void branch(WeakOrderBuilder& b, F&& f) const {
    const int levels = b.levels();
    for (int level = 0; level < levels; ++level) {
      b.push_into(level);
      if (passes(b) && f()) {
        b.pop();
        return;
      }
      b.pop();
    }
    for (int gap = 0; gap <= levels; ++gap) {
      b.push_new(gap);
      if (passes(b) && f()) {
        b.pop();
        return;
      }
      b.pop();
    }
  }

  void collect(WeakOrderBuilder& b, std::vector<OrderTuple>& out) const {
    if (b.size() == free_count_) {
      out.push_back(b.tuple());
      return;
    }
    branch(b, [&] {
      collect(b, out);
      return false;
    });
  }

  bool extend(WeakOrderBuilder& b) const {
    if (b.size() == total_) return true;
    bool found = false;
    branch(b, [&] {
      found = extend(b);
      return found;
    });
    return found;
  }

  std::size_t free_count_;
  std::size_t total_ = 0;
  bool falsum_ = false;
  std::vector<std::vector<ResolvedAtom>> checks_;
};

}  // namespace

PpFormula parse_pp(std::string_view text) { return PpParser(text).parse(); }

TemporalRelation evaluate(const PpFormula& phi, const Template& tmpl) {
  if (phi.free_vars.empty()) throw PreconditionError("pp formula has no free variables");
  if (phi.variable_count() > kMaxPpVariables) {
    throw SizeLimitError("pp formula variable count", phi.variable_count(), kMaxPpVariables);
  }
  if (phi.free_vars.size() > kMaxEnumerationArity) {
    throw SizeLimitError("pp formula free variable count", phi.free_vars.size(), kMaxEnumerationArity);
  }
  Search search(phi, tmpl);
  const std::size_t arity = phi.free_vars.size();
  if (search.falsum()) return TemporalRelation(arity, {});

  const std::vector<OrderTuple> candidates = search.free_candidates();
  std::vector<char> keep(candidates.size(), 0);
  const auto count = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    keep[static_cast<std::size_t>(i)] = search.extends(candidates[static_cast<std::size_t>(i)]) ? 1 : 0;
  }
  std::vector<OrderTuple> orbits;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (keep[i]) orbits.push_back(candidates[i]);
  }
  return TemporalRelation(arity, std::move(orbits));
}

}  // namespace tcsp

namespace tcsp::reference {

TemporalRelation evaluate(const PpFormula& phi, const Template& tmpl) {
  if (phi.free_vars.empty()) throw PreconditionError("pp formula has no free variables");
  const std::size_t n = phi.variable_count();
  if (n > kMaxEnumerationArity) throw SizeLimitError("exhaustive pp evaluation", n, kMaxEnumerationArity);
  std::vector<std::pair<const TemporalRelation*, const PpAtom*>> atoms;
  for (const auto& a : phi.atoms) {
    const TemporalRelation* r = nullptr;
    if (a.kind == PpAtom::Kind::Relation) {
      r = tmpl.at(a.symbol).get();
      if (r->arity() != a.args.size()) throw ArityError("atom " + a.symbol + " has the wrong number of arguments");
    }
    atoms.emplace_back(r, &a);
  }
  std::vector<int> free_positions(phi.free_vars.size());
  for (std::size_t i = 0; i < free_positions.size(); ++i) free_positions[i] = static_cast<int>(i);
  std::vector<OrderTuple> orbits;
  for_each_weak_order(n, [&](const OrderTuple& t) {
    for (const auto& [r, a] : atoms) {
      switch (a->kind) {
        case PpAtom::Kind::Falsum:
          return;
        case PpAtom::Kind::Equality:
          if (t[static_cast<std::size_t>(a->args[0])] != t[static_cast<std::size_t>(a->args[1])]) return;
          break;
        case PpAtom::Kind::Relation:
          if (!r->contains(project_tuple(t, a->args))) return;
          break;
      }
    }
    orbits.push_back(project_tuple(t, free_positions));
  });
  return TemporalRelation(phi.free_vars.size(), std::move(orbits));
}

}  // namespace tcsp::reference
