#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "tcsp/error.hpp"
#include "tcsp/polymorphism.hpp"
#include "tcsp/reference.hpp"

using namespace tcsp;

namespace {

const std::vector<PolyOp>& all_ops() {
  static const std::vector<PolyOp> ops = [] {
    std::vector<PolyOp> v;
    for (OpKind k : {OpKind::Min, OpKind::Mi, OpKind::Mx, OpKind::Ll, OpKind::Pp, OpKind::Lex, OpKind::Constant}) {
      v.push_back({k, false});
      if (k != OpKind::Constant) v.push_back({k, true});
    }
    return v;
  }();
  return ops;
}

JointOrder joint_of(const std::vector<int>& left, const std::vector<int>& right, std::optional<int> slot = {}) {
  std::vector<int> all(left);
  all.insert(all.end(), right.begin(), right.end());
  JointOrder j;
  j.joint = normalize(all);
  std::vector<int> li, ri;
  for (std::size_t i = 0; i < left.size(); ++i) {
    li.push_back(static_cast<int>(i));
    ri.push_back(static_cast<int>(left.size() + i));
  }
  j.left = project_tuple(j.joint, li);
  j.right = project_tuple(j.joint, ri);
  j.zero_slot = slot;
  return j;
}

}  // namespace

TEST(PolyOp, Names) {
  for (const auto& op : all_ops()) EXPECT_EQ(PolyOp::parse(op.name()), op) << op.name();
  EXPECT_EQ((PolyOp{OpKind::Ll, true}).name(), "dual-ll");
  EXPECT_EQ((PolyOp{OpKind::Constant, false}).name(), "const");
  EXPECT_THROW(PolyOp::parse("max"), UnknownSymbolError);
}

TEST(ApplyOrderSemantics, Examples) {
  // left=(a,d), right=(c,b) with a<b<c<d: pointwise min is (a,b).
  EXPECT_EQ(apply_order_semantics({OpKind::Min, false}, joint_of({0, 3}, {2, 1})), (OrderTuple{0, 1}));
  // mx on (q,q) and (q,q'): equal pair gets the higher copy.
  EXPECT_EQ(apply_order_semantics({OpKind::Mx, false}, joint_of({0, 0}, {0, 1})), (OrderTuple{1, 0}));
  // mi on (q,q) and (q,q'): equal pair gets the lowest copy, x<y the highest.
  EXPECT_EQ(apply_order_semantics({OpKind::Mi, false}, joint_of({0, 0}, {0, 1})), (OrderTuple{0, 1}));
  EXPECT_THROW(apply_order_semantics({OpKind::Ll, false}, joint_of({0}, {0})), PreconditionError);
  EXPECT_THROW(apply_order_semantics({OpKind::Pp, false}, joint_of({0}, {0})), PreconditionError);
  EXPECT_EQ(apply_order_semantics({OpKind::Constant, false}, joint_of({0, 1}, {1, 0})), (OrderTuple{0, 0}));
}

TEST(ApplyOrderSemantics, MatchesIntegerReferenceExhaustively) {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (const auto& l : enumerate_weak_orders(k)) {
      for (const auto& r : enumerate_weak_orders(k)) {
        for (bool with_zero : {false, true}) {
          for (const auto& j : joint_refinements(l, r, with_zero)) {
            const auto values = oracle::realize(j);
            for (const auto& op : all_ops()) {
              if (needs_zero(op.kind) && !with_zero) continue;
              const auto expected = oracle::apply(op, values.left, values.right);
              ASSERT_FALSE(expected.empty()) << op.name();
              ASSERT_EQ(apply_order_semantics(op, j), oracle::tuple_of(expected))
                  << op.name() << " joint " << j.joint << " slot " << (j.zero_slot ? *j.zero_slot : -1);
            }
          }
        }
      }
    }
  }
}

TEST(Preserves, PaperExamples) {
  EXPECT_TRUE(preserves(named("X"), {OpKind::Mx, false}));
  EXPECT_FALSE(preserves(named("X"), {OpKind::Min, false}));
  EXPECT_TRUE(preserves(named("Rll"), {OpKind::Constant, false}));
  EXPECT_FALSE(preserves(named("X"), {OpKind::Constant, false}));
  EXPECT_TRUE(preserves(TemporalRelation(2, {}), {OpKind::Constant, false}));
  EXPECT_TRUE(preserves_template(Template::from_library({"X"}), {OpKind::Mx, false}));
  EXPECT_TRUE(preserves_template(Template::from_library({"Rmin"}), {OpKind::Ll, false}));
  EXPECT_FALSE(preserves_template(Template::from_library({"Betw"}), {OpKind::Min, false}));
}

TEST(Preserves, XIsNotPreservedByMi) {
  // (0,0,1) and (1,0,0) are in X; mi gives (g0, a0, b0), order type <2,0,1>.
  const auto j = joint_of({0, 0, 1}, {1, 0, 0});
  const auto image = apply_order_semantics({OpKind::Mi, false}, j);
  EXPECT_EQ(image, (OrderTuple{2, 0, 1}));
  EXPECT_FALSE(named("X").contains(image));
  EXPECT_FALSE(preserves(named("X"), {OpKind::Mi, false}));
}

TEST(Preserves, MatchesIndependentOracleOnSmallRelations) {
  std::vector<TemporalRelation> rels;
  for (auto name : library_names()) {
    if (named(name).arity() <= 3) rels.push_back(named(name));
  }
  for (std::size_t n = 1; n <= 3; ++n) rels.push_back(rmx({0}, n));
  rels.push_back(rmx({0, 1}, 3));
  rels.push_back(oracle::relation_of(3, [](const oracle::Ranks& t) { return t[0] != t[1] || t[1] != t[2]; }));
  rels.push_back(oracle::relation_of(2, [](const oracle::Ranks&) { return false; }));
  for (const auto& r : rels) {
    for (const auto& op : all_ops()) {
      ASSERT_EQ(preserves(r, op), oracle::preserves(r, op)) << r.to_string() << " " << op.name();
    }
  }
}

TEST(Preserves, ParallelMatchesSerialReference) {
  for (auto name : library_names()) {
    const auto r = named(name);
    for (const auto& op : all_ops()) {
      ASSERT_EQ(preserves(r, op), reference::preserves(r, op)) << name << " " << op.name();
    }
  }
}

TEST(PreservesProperties, DualityAndRenaming) {
  for (auto name : library_names()) {
    const auto r = named(name);
    const auto d = dual_rel(r);
    std::vector<int> rev;
    for (int i = static_cast<int>(r.arity()) - 1; i >= 0; --i) rev.push_back(i);
    const auto renamed = pr_rel(r, rev);
    for (const auto& op : all_ops()) {
      const PolyOp flipped{op.kind, op.kind == OpKind::Constant ? false : !op.dualized};
      ASSERT_EQ(preserves(r, op), preserves(d, flipped)) << name << " " << op.name();
      ASSERT_EQ(preserves(r, op), preserves(renamed, op)) << name << " " << op.name();
    }
  }
}

TEST(PreservesProperties, KnownImplications) {
  // min, mi or mx imply pp; ll implies lex.
  for (auto name : library_names()) {
    const auto r = named(name);
    for (bool dual : {false, true}) {
      const bool any = preserves(r, {OpKind::Min, dual}) || preserves(r, {OpKind::Mi, dual}) ||
                       preserves(r, {OpKind::Mx, dual});
      if (any) EXPECT_TRUE(preserves(r, {OpKind::Pp, dual})) << name;
      if (preserves(r, {OpKind::Ll, dual})) EXPECT_TRUE(preserves(r, {OpKind::Lex, dual})) << name;
    }
  }
}

TEST(Classify, PaperTable) {
  EXPECT_EQ(classify(Template::from_library({"neq", "Sll"})).logic_class, LogicClass::Datalog);
  EXPECT_EQ(classify(Template::from_library({"leq", "neq"})).logic_class, LogicClass::Datalog);
  EXPECT_EQ(classify(Template::from_library({"Rmin"})).logic_class, LogicClass::FP);
  EXPECT_EQ(classify(Template::from_library({"RminLeq", "lt"})).logic_class, LogicClass::FP);
  EXPECT_EQ(classify(Template::from_library({"Rmi", "Smi", "neq"})).logic_class, LogicClass::FP);
  EXPECT_EQ(classify(Template::from_library({"X"})).logic_class, LogicClass::FPR2);
  EXPECT_EQ(classify(Template::from_library({"Betw"})).logic_class, LogicClass::NPComplete);
}

TEST(Classify, MatrixAndSummary) {
  const auto c = classify(Template::from_library({"X", "lt"}));
  EXPECT_EQ(c.symbols, (std::vector<std::string>{"X", "lt"}));
  ASSERT_EQ(c.matrix.size(), 9u);
  const auto& ops = classification_ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    EXPECT_EQ(c.matrix[i][0], preserves(named("X"), ops[i]));
    EXPECT_EQ(c.matrix[i][1], preserves(named("lt"), ops[i]));
    EXPECT_EQ(c.preserved[i], c.matrix[i][0] && c.matrix[i][1]);
    EXPECT_EQ(c.preserved_by(ops[i]), c.preserved[i]);
  }
  EXPECT_EQ(classify(Template::from_library({"X"})).summary(),
            "FPR2 (preserved by: mx; not: min, mi, ll, dual-min, dual-mi, dual-mx, dual-ll, const)");
}

TEST(Classify, EmptyTemplateIsDatalog) {
  EXPECT_EQ(classify(Template{}).logic_class, LogicClass::Datalog);
}

TEST(Classify, LogicClassNames) {
  for (auto c : {LogicClass::Datalog, LogicClass::FP, LogicClass::FPR2, LogicClass::NPComplete}) {
    EXPECT_EQ(parse_logic_class(to_string(c)), c);
  }
  EXPECT_THROW(parse_logic_class("P"), UnknownSymbolError);
}
