#include "tcsp/polymorphism.hpp"

#include <algorithm>
#include <atomic>

#include "tcsp/error.hpp"
#include "tcsp/reference.hpp"

namespace tcsp {

namespace {

constexpr std::array<std::pair<OpKind, std::string_view>, 7> kKindNames{{
    {OpKind::Min, "min"},
    {OpKind::Mi, "mi"},
    {OpKind::Mx, "mx"},
    {OpKind::Ll, "ll"},
    {OpKind::Pp, "pp"},
    {OpKind::Lex, "lex"},
    {OpKind::Constant, "const"},
}};

// Sort key of f(a, b) where a, b are joint levels. `width` exceeds every level.
long key(OpKind kind, int a, int b, bool a_nonpositive, long width) {
  const int lo = std::min(a, b);
  switch (kind) {
    case OpKind::Min:
      return lo;
    case OpKind::Lex:
      return a * width + b;
    case OpKind::Mi:
      return lo * 3L + (a == b ? 0 : a > b ? 1 : 2);
    case OpKind::Mx:
      return lo * 2L + (a == b ? 1 : 0);
    case OpKind::Pp:
      return a_nonpositive ? a : width + b;
    case OpKind::Ll:
      return a_nonpositive ? a * width + b : width * width + b * width + a;
    case OpKind::Constant:
      return 0;
  }
  return 0;
}

using Keys = std::array<long, kMaxTupleArity>;

// A dualized op sees the joint levels flipped and negates its keys.
void fill_keys(const PolyOp& op, const OrderTuple& joint, std::size_t k, std::optional<int> zero_slot, Keys& keys) {
  if (needs_zero(op.kind) && !zero_slot) {
    throw PreconditionError("operation " + op.name() + " needs the position of 0");
  }
  const int top = joint.levels() - 1;
  const long width = static_cast<long>(joint.levels()) + 1;
  std::optional<int> slot = zero_slot;
  if (slot && op.dualized) slot = 2 * joint.levels() - *slot;
  for (std::size_t i = 0; i < k; ++i) {
    int a = joint[i];
    int b = joint[k + i];
    if (op.dualized) {
      a = top - a;
      b = top - b;
    }
    const bool nonpos = slot && 2 * a + 1 <= *slot;
    const long v = key(op.kind, a, b, nonpos, width);
    keys[i] = op.dualized ? -v : v;
  }
}

OrderTuple apply_joint(const PolyOp& op, const OrderTuple& joint, std::size_t k, std::optional<int> zero_slot) {
  Keys keys;
  fill_keys(op, joint, k, zero_slot, keys);
  return normalize(std::span<const long>(keys.data(), k));
}

// Orbits of arity k <= kCodedArity numbered by their dense ranks in base k.
constexpr std::size_t kCodedArity = 8;

std::uint32_t code_of_ranks(const std::uint8_t* ranks, std::size_t k) {
  std::uint32_t code = 0;
  for (std::size_t i = k; i-- > 0;) code = code * static_cast<std::uint32_t>(k) + ranks[i];
  return code;
}

std::uint32_t code_of_keys(const Keys& keys, std::size_t k) {
  bool first[kCodedArity];
  for (std::size_t j = 0; j < k; ++j) {
    first[j] = true;
    for (std::size_t l = 0; l < j && first[j]; ++l) first[j] = keys[l] != keys[j];
  }
  std::uint8_t ranks[kCodedArity];
  for (std::size_t i = 0; i < k; ++i) {
    // Number of distinct keys below keys[i].
    int below = 0;
    for (std::size_t j = 0; j < k; ++j) below += first[j] && keys[j] < keys[i];
    ranks[i] = static_cast<std::uint8_t>(below);
  }
  return code_of_ranks(ranks, k);
}

// Membership test for a relation; a bitset over orbit codes when the arity allows.
class Membership {
 public:
  explicit Membership(const TemporalRelation& r) : r_(r), k_(r.arity()) {
    if (k_ == 0 || k_ > kCodedArity) return;
    std::size_t count = 1;
    for (std::size_t i = 0; i < k_; ++i) count *= k_;
    bits_.assign(count, false);
    for (const auto& t : r.orbits()) bits_[code_of_ranks(t.begin(), k_)] = true;
  }

  bool coded() const noexcept { return !bits_.empty(); }

  bool contains(const PolyOp& op, const OrderTuple& joint, std::optional<int> slot) const {
    if (!coded()) return r_.contains(apply_joint(op, joint, k_, slot));
    Keys keys;
    fill_keys(op, joint, k_, slot, keys);
    return bits_[code_of_keys(keys, k_)];
  }

  bool contains(const Keys& keys) const { return bits_[code_of_keys(keys, k_)]; }

 private:
  const TemporalRelation& r_;
  std::size_t k_;
  std::vector<bool> bits_;
};

// Bit i set iff left coordinate i is on the side of 0 that the op inspects.
std::uint32_t sign_pattern(const OrderTuple& joint, std::size_t k, int slot, bool dualized) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const int twice = 2 * joint[i] + 1;
    const bool side = dualized ? slot <= twice : twice <= slot;
    if (side) mask |= 1u << i;
  }
  return mask;
}

bool constant_preserves(const TemporalRelation& r) {
  if (r.empty()) return true;
  std::vector<int> zeros(r.arity(), 0);
  return r.contains(normalize(zeros));
}

bool pair_closed(const Membership& r, std::size_t k, const PolyOp& op, const OrderTuple& t1, const OrderTuple& t2) {
  const bool zero = needs_zero(op.kind);
  bool ok = true;
  // for_each_joint has no early exit; the flag short-circuits the remaining work.
  for_each_joint(t1, t2, [&](const OrderTuple& joint) {
    if (!ok) return;
    if (!zero) {
      ok = r.contains(op, joint, std::nullopt);
      return;
    }
    // The pattern is monotone in the slot, so repeats are adjacent.
    std::optional<std::uint32_t> last;
    if (!r.coded()) {
      for (int slot = 0; slot <= 2 * joint.levels() && ok; ++slot) {
        const std::uint32_t pattern = sign_pattern(joint, k, slot, op.dualized);
        if (pattern == last) continue;
        last = pattern;
        ok = r.contains(op, joint, slot);
      }
      return;
    }
    // Each coordinate's key only depends on its side of 0: take both
    // variants once and mix them per pattern.
    const int top_slot = 2 * joint.levels();
    Keys low, high, mixed;
    fill_keys(op, joint, k, 0, low);
    fill_keys(op, joint, k, top_slot, high);
    for (int slot = 0; slot <= top_slot && ok; ++slot) {
      const std::uint32_t pattern = sign_pattern(joint, k, slot, op.dualized);
      if (pattern == last) continue;
      last = pattern;
      for (std::size_t i = 0; i < k; ++i) mixed[i] = (((pattern >> i) & 1u) != op.dualized) ? high[i] : low[i];
      ok = r.contains(mixed);
    }
  });
  return ok;
}

}  // namespace

std::string PolyOp::name() const {
  std::string base;
  for (const auto& [k, n] : kKindNames) {
    if (k == kind) base = std::string(n);
  }
  return dualized ? "dual-" + base : base;
}

PolyOp PolyOp::parse(std::string_view name) {
  PolyOp op;
  std::string_view rest = name;
  if (rest.substr(0, 5) == "dual-") {
    op.dualized = true;
    rest.remove_prefix(5);
  }
  for (const auto& [k, n] : kKindNames) {
    if (n == rest) {
      op.kind = k;
      return op;
    }
  }
  throw UnknownSymbolError("unknown operation '" + std::string(name) + "'");
}

bool needs_zero(OpKind kind) noexcept { return kind == OpKind::Ll || kind == OpKind::Pp; }

OrderTuple apply_order_semantics(const PolyOp& op, const JointOrder& j) {
  return apply_joint(op, j.joint, j.arity(), j.zero_slot);
}

bool preserves(const TemporalRelation& r, const PolyOp& op) {
  if (op.kind == OpKind::Constant) return constant_preserves(r);
  if (2 * r.arity() > kMaxTupleArity) {
    throw SizeLimitError("preservation test arity", r.arity(), kMaxTupleArity / 2);
  }
  const auto& orbits = r.orbits();
  const auto n = static_cast<std::ptrdiff_t>(orbits.size());
  const Membership member(r);
  std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t p = 0; p < n * n; ++p) {
    if (failed.load(std::memory_order_relaxed)) continue;
    const auto& t1 = orbits[static_cast<std::size_t>(p / n)];
    const auto& t2 = orbits[static_cast<std::size_t>(p % n)];
    if (!pair_closed(member, r.arity(), op, t1, t2)) failed.store(true, std::memory_order_relaxed);
  }
  return !failed.load();
}

bool preserves_template(const Template& t, const PolyOp& op) {
  return std::all_of(t.entries().begin(), t.entries().end(),
                     [&](const Template::Entry& e) { return preserves(*e.relation, op); });
}

namespace reference {

bool preserves(const TemporalRelation& r, const PolyOp& op) {
  if (op.kind == OpKind::Constant) return constant_preserves(r);
  for (const auto& t1 : r.orbits()) {
    for (const auto& t2 : r.orbits()) {
      for (const auto& j : joint_refinements(t1, t2, needs_zero(op.kind))) {
        if (!r.contains(apply_order_semantics(op, j))) return false;
      }
    }
  }
  return true;
}

}  // namespace reference

std::string_view to_string(LogicClass c) noexcept {
  switch (c) {
    case LogicClass::Datalog:
      return "Datalog";
    case LogicClass::FP:
      return "FP";
    case LogicClass::FPR2:
      return "FPR2";
    case LogicClass::NPComplete:
      return "NPComplete";
  }
  return "";
}

LogicClass parse_logic_class(std::string_view text) {
  for (auto c : {LogicClass::Datalog, LogicClass::FP, LogicClass::FPR2, LogicClass::NPComplete}) {
    if (to_string(c) == text) return c;
  }
  throw UnknownSymbolError("unknown logic class '" + std::string(text) + "'");
}

const std::array<PolyOp, 9>& classification_ops() {
  static const std::array<PolyOp, 9> ops{{
      {OpKind::Min, false},
      {OpKind::Mi, false},
      {OpKind::Mx, false},
      {OpKind::Ll, false},
      {OpKind::Min, true},
      {OpKind::Mi, true},
      {OpKind::Mx, true},
      {OpKind::Ll, true},
      {OpKind::Constant, false},
  }};
  return ops;
}

bool Classification::preserved_by(const PolyOp& op) const {
  const auto& ops = classification_ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i] == op) return preserved[i];
  }
  throw PreconditionError("operation " + op.name() + " is not part of the classification");
}

std::string Classification::summary() const {
  std::string yes;
  std::string no;
  const auto& ops = classification_ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    std::string& list = preserved[i] ? yes : no;
    if (!list.empty()) list += ", ";
    list += ops[i].name();
  }
  std::string out(to_string(logic_class));
  out += " (preserved by: " + (yes.empty() ? std::string("none") : yes);
  out += "; not: " + (no.empty() ? std::string("none") : no) + ")";
  return out;
}

Classification classify(const Template& t) {
  Classification c;
  const auto& ops = classification_ops();
  for (const auto& e : t.entries()) c.symbols.push_back(e.symbol);
  c.matrix.assign(ops.size(), std::vector<bool>(t.size(), false));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    bool all = true;
    for (std::size_t r = 0; r < t.size(); ++r) {
      const bool ok = preserves(*t.entries()[r].relation, ops[i]);
      c.matrix[i][r] = ok;
      all = all && ok;
    }
    c.preserved[i] = all;
  }
  const auto& p = c.preserved;
  const bool min = p[0], mi = p[1], mx = p[2], ll = p[3];
  const bool dmin = p[4], dmi = p[5], dmx = p[6], dll = p[7], constant = p[8];
  if ((ll && dll) || constant) {
    c.logic_class = LogicClass::Datalog;
  } else if (min || mi || ll || dmin || dmi || dll) {
    c.logic_class = LogicClass::FP;
  } else if (mx || dmx) {
    c.logic_class = LogicClass::FPR2;
  } else {
    c.logic_class = LogicClass::NPComplete;
  }
  return c;
}

}  // namespace tcsp
