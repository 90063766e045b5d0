#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "tcsp/error.hpp"
#include "tcsp/order_type.hpp"

using namespace tcsp;

TEST(Normalize, DenseRelabeling) {
  EXPECT_EQ(normalize({5, 2, 5}), (OrderTuple{1, 0, 1}));
  EXPECT_EQ(normalize({0, 1, 2}), (OrderTuple{0, 1, 2}));
  EXPECT_EQ(normalize({7, 7, 7}), (OrderTuple{0, 0, 0}));
  EXPECT_EQ(normalize({-4, 9, -4, 3}), (OrderTuple{0, 2, 0, 1}));
}

TEST(OrderTuple, RejectsNonDenseRanks) {
  EXPECT_THROW((OrderTuple{0, 2}), Error);
  EXPECT_THROW((OrderTuple{1, 1}), Error);
}

TEST(OrderTuple, TextRoundTrip) {
  const OrderTuple t{0, 0, 1};
  EXPECT_EQ(t.to_string(), "<0,0,1>");
  EXPECT_EQ(parse_order_tuple("<0,0,1>"), t);
  EXPECT_EQ(parse_order_tuple(" < 2 , 0 , 1 > "), (OrderTuple{2, 0, 1}));
  EXPECT_THROW(parse_order_tuple("<0,2>"), Error);
  EXPECT_THROW(parse_order_tuple("0,1"), Error);
}

TEST(Chi, MarksMinima) {
  EXPECT_EQ(chi(OrderTuple{1, 0, 0}).to_string(), "011");
  EXPECT_EQ(chi(OrderTuple{0, 0, 0}).to_string(), "111");
  EXPECT_EQ(chi(OrderTuple{0, 1, 2}).to_string(), "100");
}

TEST(Minset, OneBasedPositionsAreZeroBasedHere) {
  EXPECT_EQ(minset(OrderTuple{0, 0, 1}), (std::vector<int>{0, 1}));
  EXPECT_EQ(minset(OrderTuple{2, 1, 0}), (std::vector<int>{2}));
  EXPECT_EQ(minset(OrderTuple{0}), (std::vector<int>{0}));
}

TEST(DualTuple, ReversesOrder) {
  EXPECT_EQ(dual_tuple(OrderTuple{0, 1}), (OrderTuple{1, 0}));
  EXPECT_EQ(dual_tuple(OrderTuple{0, 0}), (OrderTuple{0, 0}));
  EXPECT_EQ(dual_tuple(OrderTuple{0, 2, 1}), (OrderTuple{2, 0, 1}));
}

TEST(ProjectTuple, Examples) {
  EXPECT_EQ(project_tuple(OrderTuple{0, 2, 1}, {1, 2}), (OrderTuple{1, 0}));
  EXPECT_EQ(project_tuple(OrderTuple{0, 0, 1}, {0, 1}), (OrderTuple{0, 0}));
  EXPECT_EQ(project_tuple(OrderTuple{0, 2, 1}, {0, 1, 2}), (OrderTuple{0, 2, 1}));
  EXPECT_EQ(project_tuple(OrderTuple{0, 1}, {1, 1, 0}), (OrderTuple{1, 1, 0}));
  EXPECT_THROW(project_tuple(OrderTuple{0, 1}, std::span<const int>{}), Error);
}

TEST(WeakOrders, SmallCases) {
  EXPECT_EQ(enumerate_weak_orders(1), (std::vector<OrderTuple>{OrderTuple{0}}));
  const auto two = enumerate_weak_orders(2);
  EXPECT_EQ(std::set<OrderTuple>(two.begin(), two.end()),
            (std::set<OrderTuple>{OrderTuple{0, 0}, OrderTuple{0, 1}, OrderTuple{1, 0}}));
  EXPECT_EQ(enumerate_weak_orders(3).size(), 13u);
}

TEST(WeakOrders, MatchNaiveEnumerationAndBellRecurrence) {
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto lib = enumerate_weak_orders(n);
    std::set<OrderTuple> lib_set(lib.begin(), lib.end());
    EXPECT_EQ(lib_set.size(), lib.size()) << "duplicates for n=" << n;
    std::set<OrderTuple> naive;
    for (const auto& w : oracle::weak_orders(n)) naive.insert(oracle::tuple(w));
    EXPECT_EQ(lib_set, naive) << "n=" << n;
    EXPECT_EQ(lib.size(), oracle::ordered_bell(n)) << "n=" << n;
    EXPECT_EQ(ordered_bell(n), oracle::ordered_bell(n));
  }
}

TEST(WeakOrders, CapIsEnforced) {
  EXPECT_THROW(enumerate_weak_orders(kMaxEnumerationArity + 1), SizeLimitError);
}

TEST(OrderInvariants, DualInvolutionAndMaxima) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& t : enumerate_weak_orders(n)) {
      ASSERT_EQ(dual_tuple(dual_tuple(t)), t);
      ASSERT_FALSE(minset(t).empty());
      const BitTuple d = chi(dual_tuple(t));
      const int top = *std::max_element(t.begin(), t.end());
      for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(d[i], t[i] == top);
    }
  }
}

TEST(OrderInvariants, NestedProjection) {
  // Projecting to I and then to positions J of the result equals projecting
  // to I composed with J.
  for (const auto& t : enumerate_weak_orders(5)) {
    const std::vector<int> outer{4, 0, 2, 3};
    const std::vector<int> inner{2, 0, 3};
    std::vector<int> composed;
    for (int j : inner) composed.push_back(outer[static_cast<std::size_t>(j)]);
    ASSERT_EQ(project_tuple(project_tuple(t, outer), inner), project_tuple(t, composed));
  }
}

namespace {

std::set<std::pair<OrderTuple, OrderTuple>> naive_joints(const OrderTuple& l, const OrderTuple& r) {
  // Keyed by (joint, nothing): the zero slot is checked separately.
  std::set<std::pair<OrderTuple, OrderTuple>> out;
  const std::size_t k = l.arity();
  std::vector<int> left_idx(k), right_idx(k);
  std::iota(left_idx.begin(), left_idx.end(), 0);
  std::iota(right_idx.begin(), right_idx.end(), static_cast<int>(k));
  for (const auto& w : oracle::weak_orders(2 * k)) {
    const OrderTuple j = oracle::tuple(w);
    if (project_tuple(j, left_idx) == l && project_tuple(j, right_idx) == r) out.insert({j, j});
  }
  return out;
}

}  // namespace

TEST(JointRefinements, SingleCoordinate) {
  EXPECT_EQ(joint_refinements(OrderTuple{0}, OrderTuple{0}, false).size(), 3u);
  // Levels m in {1,2}: one joint with one level, two with two levels.
  EXPECT_EQ(joint_refinements(OrderTuple{0}, OrderTuple{0}, true).size(), 3u + 5u + 5u);
}

TEST(JointRefinements, EqualBruteForceFilter) {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (const auto& l : enumerate_weak_orders(k)) {
      for (const auto& r : enumerate_weak_orders(k)) {
        const auto expected = naive_joints(l, r);
        std::set<std::pair<OrderTuple, OrderTuple>> got;
        std::size_t with_zero = 0;
        for (const auto& j : joint_refinements(l, r, false)) {
          EXPECT_EQ(j.left, l);
          EXPECT_EQ(j.right, r);
          EXPECT_FALSE(j.zero_slot.has_value());
          got.insert({j.joint, j.joint});
        }
        EXPECT_EQ(got, expected);
        std::set<std::pair<OrderTuple, int>> zeros;
        for (const auto& j : joint_refinements(l, r, true)) {
          ASSERT_TRUE(j.zero_slot.has_value());
          EXPECT_GE(*j.zero_slot, 0);
          EXPECT_LE(*j.zero_slot, 2 * j.joint.levels());
          zeros.insert({j.joint, *j.zero_slot});
          ++with_zero;
        }
        EXPECT_EQ(zeros.size(), with_zero);
        std::size_t expected_zero = 0;
        for (const auto& [j, unused] : expected) expected_zero += 2 * static_cast<std::size_t>(j.levels()) + 1;
        EXPECT_EQ(with_zero, expected_zero);
      }
    }
  }
}

TEST(JointRefinements, StrictChainsRestrictCorrectly) {
  const OrderTuple chain{0, 1};
  for (const auto& j : joint_refinements(chain, chain, false)) {
    EXPECT_EQ(project_tuple(j.joint, {0, 1}), chain);
    EXPECT_EQ(project_tuple(j.joint, {2, 3}), chain);
  }
}

TEST(WeakOrderBuilder, PushPopReproducesTuples) {
  WeakOrderBuilder b;
  b.push_new(0);  // x
  b.push_new(1);  // y above x
  b.push_into(0);  // z = x
  EXPECT_EQ(b.tuple(), (OrderTuple{0, 1, 0}));
  b.pop();
  b.push_new(0);  // z below everything
  EXPECT_EQ(b.tuple(), (OrderTuple{1, 2, 0}));
  b.reset(OrderTuple{2, 0, 1});
  EXPECT_EQ(b.tuple(), (OrderTuple{2, 0, 1}));
}
