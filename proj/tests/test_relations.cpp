#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "tcsp/error.hpp"
#include "tcsp/polymorphism.hpp"
#include "tcsp/relation.hpp"

using namespace tcsp;
using oracle::Ranks;

namespace {

// Library relations written again from their first-order definitions.
TemporalRelation expected_named(std::string_view name) {
  using R = const Ranks&;
  if (name == "lt") return oracle::relation_of(2, [](R t) { return t[0] < t[1]; });
  if (name == "leq") return oracle::relation_of(2, [](R t) { return t[0] <= t[1]; });
  if (name == "eq") return oracle::relation_of(2, [](R t) { return t[0] == t[1]; });
  if (name == "neq") return oracle::relation_of(2, [](R t) { return t[0] != t[1]; });
  if (name == "X") {
    return oracle::relation_of(3, [](R t) {
      const int m = std::min({t[0], t[1], t[2]});
      return (t[0] == m) + (t[1] == m) + (t[2] == m) == 2;
    });
  }
  if (name == "Rmin") return oracle::relation_of(3, [](R t) { return t[1] < t[0] || t[2] < t[0]; });
  if (name == "RminLeq") return oracle::relation_of(3, [](R t) { return t[1] <= t[0] || t[2] <= t[0]; });
  if (name == "Rmi") return oracle::relation_of(3, [](R t) { return t[1] < t[0] || t[2] <= t[0]; });
  if (name == "Smi") return oracle::relation_of(3, [](R t) { return t[0] != t[1] || t[2] <= t[0]; });
  if (name == "Rll") {
    return oracle::relation_of(3, [](R t) { return t[1] < t[0] || t[2] < t[0] || (t[0] == t[1] && t[1] == t[2]); });
  }
  if (name == "Sll") return oracle::relation_of(4, [](R t) { return t[0] != t[1] || t[2] <= t[3]; });
  if (name == "Betw") {
    return oracle::relation_of(3, [](R t) { return (t[0] < t[1] && t[1] < t[2]) || (t[2] < t[1] && t[1] < t[0]); });
  }
  throw std::logic_error("no expectation for " + std::string(name));
}

std::set<std::string> bits(const std::vector<BitTuple>& v) {
  std::set<std::string> out;
  for (const auto& b : v) out.insert(b.to_string());
  return out;
}

}  // namespace

TEST(Named, EveryLibraryRelationMatchesItsDefinition) {
  EXPECT_EQ(library_names().size(), 12u);
  for (auto name : library_names()) {
    EXPECT_EQ(named(name), expected_named(name)) << name;
  }
  EXPECT_THROW(named("Cycl"), UnknownSymbolError);
}

TEST(Named, Sizes) {
  // y<x or z<x fails exactly when x is minimal: 13 - 6 order types remain.
  EXPECT_EQ(named("Rmin").size(), 7u);
  EXPECT_EQ(named("X").orbits(), (std::vector<OrderTuple>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  EXPECT_EQ(named("Betw").orbits(), (std::vector<OrderTuple>{{0, 1, 2}, {2, 1, 0}}));
}

TEST(Contains, Examples) {
  const auto x = named("X");
  EXPECT_TRUE(x.contains({0, 0, 1}));
  EXPECT_FALSE(x.contains({0, 1, 2}));
  EXPECT_FALSE(x.contains({0, 0, 0}));
  EXPECT_THROW(x.contains({0, 1}), ArityError);
}

TEST(Projection, Examples) {
  const auto x = named("X");
  EXPECT_EQ(pr_rel(x, {1, 2}), TemporalRelation::full(2));
  EXPECT_EQ(pr_rel(named("Betw"), {0}).orbits(), (std::vector<OrderTuple>{{0}}));
  EXPECT_EQ(pr_rel(x, {0, 1, 2}), x);
  EXPECT_THROW(pr_rel(x, std::span<const int>{}), ArityError);
}

TEST(Contraction, Examples) {
  EXPECT_EQ(con_rel(named("X"), {0, 0, 2}).orbits(), (std::vector<OrderTuple>{{0, 0, 1}}));
  EXPECT_EQ(con_rel(named("Rmin"), {0, 1, 2}), named("Rmin"));
  EXPECT_EQ(pr_rel(con_rel(named("Sll"), {0, 0, 2, 3}), {2, 3}), named("leq"));
  EXPECT_TRUE(con_rel(named("neq"), {0, 0}).empty());
}

TEST(Dual, Examples) {
  EXPECT_EQ(dual_rel(named("lt")), oracle::relation_of(2, [](const Ranks& t) { return t[0] > t[1]; }));
  EXPECT_EQ(dual_rel(named("X")), oracle::relation_of(3, [](const Ranks& t) {
              const int m = std::max({t[0], t[1], t[2]});
              return (t[0] == m) + (t[1] == m) + (t[2] == m) == 2;
            }));
  EXPECT_EQ(dual_rel(dual_rel(named("Rmin"))), named("Rmin"));
}

TEST(Ms, Examples) {
  EXPECT_EQ(bits(ms(named("X"))), (std::set<std::string>{"000", "110", "011", "101"}));
  EXPECT_EQ(bits(ms(TemporalRelation(2, {}))), (std::set<std::string>{"00"}));
  EXPECT_EQ(bits(ms(named("lt"))), (std::set<std::string>{"00", "10"}));
}

TEST(Rmx, Examples) {
  const auto r3 = rmx({0, 1, 2}, 3);
  EXPECT_TRUE(r3.contains({0, 0, 1}));
  EXPECT_FALSE(r3.contains({0, 1, 1}));
  EXPECT_FALSE(r3.contains({0, 0, 0}));
  EXPECT_EQ(rmx({0}, 2), oracle::relation_of(2, [](const Ranks& t) { return t[0] > t[1]; }));
  EXPECT_EQ(rmx({0, 1}, 2), named("eq"));
}

TEST(Rmx, MatchesParityDefinition) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) idx.push_back(static_cast<int>(i));
      }
      const auto expected = oracle::relation_of(n, [&](const Ranks& t) {
        const int m = *std::min_element(t.begin(), t.end());
        int parity = 0;
        for (int i : idx) parity ^= (t[static_cast<std::size_t>(i)] == m);
        return parity == 0;
      });
      ASSERT_EQ(rmx(idx, n), expected) << "n=" << n << " mask=" << mask;
    }
  }
}

TEST(RelationInvariants, ProjectionAndContractionCommuteWithDual) {
  for (auto name : library_names()) {
    const auto r = named(name);
    const std::size_t k = r.arity();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> idx;
      for (std::size_t i = 0; i < k; ++i) {
        if ((mask >> i) & 1u) idx.push_back(static_cast<int>(i));
      }
      ASSERT_EQ(dual_rel(pr_rel(r, idx)), pr_rel(dual_rel(r), idx)) << name;
      std::vector<int> classes(k);
      for (std::size_t i = 0; i < k; ++i) classes[i] = ((mask >> i) & 1u) ? 0 : static_cast<int>(i) + 1;
      ASSERT_EQ(dual_rel(con_rel(r, classes)), con_rel(dual_rel(r), classes)) << name;
    }
  }
}

TEST(RelationInvariants, MsOfMxPreservedRelationsIsXorClosed) {
  std::vector<TemporalRelation> candidates;
  for (auto name : library_names()) candidates.push_back(named(name));
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) idx.push_back(static_cast<int>(i));
      }
      candidates.push_back(rmx(idx, n));
    }
  }
  // One arity-5 case; the mx test costs seconds per relation there.
  candidates.push_back(rmx({0, 1, 2, 3}, 5));
  const PolyOp mx{OpKind::Mx, false};
  std::size_t checked = 0;
  for (const auto& r : candidates) {
    if (r.arity() <= 3 && !oracle::preserves(r, mx)) continue;
    if (r.arity() > 3 && !preserves(r, mx)) continue;
    ++checked;
    std::set<std::uint32_t> space;
    for (const auto& b : ms(r)) space.insert(b.mask());
    for (auto a : space) {
      for (auto b : space) ASSERT_TRUE(space.count(a ^ b)) << r.to_string();
    }
  }
  // X and every rmx relation are preserved by mx.
  EXPECT_GE(checked, 1u + 1u + 3u + 7u + 15u + 1u);
}

TEST(RelationInvariants, FullParityRelationsSpanAHyperplane) {
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<int> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
    const auto r = rmx(idx, k);
    for (const auto& t : r.orbits()) ASSERT_EQ(chi(t).weight() % 2, 0);
    EXPECT_EQ(ms(r).size(), std::size_t{1} << (k - 1)) << k;
  }
}

TEST(RelationInvariants, BinaryLibraryRelations) {
  const auto lt = named("lt"), leq = named("leq"), eq = named("eq"), neq = named("neq");
  std::set<OrderTuple> u(lt.orbits().begin(), lt.orbits().end());
  u.insert(eq.orbits().begin(), eq.orbits().end());
  EXPECT_EQ(std::vector<OrderTuple>(u.begin(), u.end()), leq.orbits());
  for (const auto& t : enumerate_weak_orders(2)) EXPECT_NE(eq.contains(t), neq.contains(t));
}

TEST(Template, AddFindDual) {
  auto t = Template::from_library({"lt", "X"});
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(*t.at("X"), named("X"));
  EXPECT_EQ(t.find("Y"), nullptr);
  EXPECT_THROW(t.at("Y"), UnknownSymbolError);
  EXPECT_THROW(t.add("lt", named("lt")), Error);
  EXPECT_EQ(*t.dual().at("lt"), dual_rel(named("lt")));
}
