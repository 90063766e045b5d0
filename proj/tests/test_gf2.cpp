#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tcsp/gf2.hpp"

using namespace tcsp;

namespace {

using Vec = std::vector<bool>;

Gf2System system_of(std::size_t vars, const std::vector<std::pair<std::vector<std::size_t>, bool>>& eqs) {
  Gf2System s{Gf2Matrix(0, vars), {}, {}};
  for (const auto& [v, b] : eqs) s.add_equation(v, b);
  return s;
}

bool satisfies(const Gf2Matrix& m, const Vec& rhs, const Vec& x) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    bool acc = false;
    for (std::size_t c = 0; c < m.cols(); ++c) acc ^= m.get(r, c) && x[c];
    if (acc != rhs[r]) return false;
  }
  return true;
}

Vec bits_of(std::uint32_t mask, std::size_t n) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1u;
  return v;
}

// Rank as the base-2 log of the row space size.
std::size_t brute_rank(const Gf2Matrix& m) {
  std::set<Vec> span;
  for (std::uint32_t mask = 0; mask < (1u << m.rows()); ++mask) {
    Vec v(m.cols(), false);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if ((mask >> r) & 1u) {
        for (std::size_t c = 0; c < m.cols(); ++c) v[c] = v[c] != m.get(r, c);
      }
    }
    span.insert(v);
  }
  std::size_t rank = 0;
  while ((std::size_t{1} << rank) < span.size()) ++rank;
  return rank;
}

Gf2Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Gf2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() % 3 == 0);
  }
  return m;
}

bool is_rref(const Gf2Matrix& m) {
  long last_lead = -1;
  bool seen_zero = false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    long lead = -1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.get(r, c)) {
        lead = static_cast<long>(c);
        break;
      }
    }
    if (lead < 0) {
      seen_zero = true;
      continue;
    }
    if (seen_zero || lead <= last_lead) return false;
    for (std::size_t o = 0; o < m.rows(); ++o) {
      if (o != r && m.get(o, static_cast<std::size_t>(lead))) return false;
    }
    last_lead = lead;
  }
  return true;
}

}  // namespace

TEST(Rref, Examples) {
  EXPECT_EQ(rref(Gf2Matrix::identity(3)), Gf2Matrix::identity(3));
  const auto m = Gf2Matrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  EXPECT_EQ(rref(m), Gf2Matrix::from_rows({{1, 0, 1}, {0, 1, 1}, {0, 0, 0}}));
  EXPECT_EQ(rref(Gf2Matrix(2, 3)), Gf2Matrix(2, 3));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Gf2Matrix::identity(3)), 3u);
  EXPECT_EQ(rank(Gf2Matrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})), 2u);
  EXPECT_EQ(rank(Gf2Matrix(3, 3)), 0u);
}

TEST(Solvable, Examples) {
  const auto a = system_of(3, {{{0, 1, 2}, false}, {{0}, true}});
  EXPECT_TRUE(solvable(a));
  EXPECT_EQ(solve(a), (Vec{true, true, false}));
  const auto b = system_of(1, {{{0}, false}, {{0}, true}});
  EXPECT_FALSE(solvable(b));
  EXPECT_FALSE(solve(b).has_value());
  const auto c = system_of(3, {{{0, 1}, true}, {{1, 2}, true}, {{0, 2}, true}});
  EXPECT_FALSE(solvable(c));
  EXPECT_FALSE(solve(c).has_value());
}

TEST(Solvable, RepeatedVariablesCancel) {
  // x + x + y = 1 is y = 1.
  const auto s = system_of(2, {{{0, 0, 1}, true}});
  EXPECT_EQ(solve(s), (Vec{false, true}));
}

TEST(Nullspace, Examples) {
  EXPECT_EQ(nullspace_basis({{true, true, false}, {false, true, true}, {true, false, true}}, 3),
            Gf2Matrix::from_rows({{1, 1, 1}}));
  EXPECT_EQ(rref(nullspace_basis({}, 2)), Gf2Matrix::identity(2));
  EXPECT_EQ(nullspace_basis({{true, false}}, 2), Gf2Matrix::from_rows({{0, 1}}));
}

TEST(Gf2Properties, RrefIsCanonicalAndRankPreserving) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 500; ++round) {
    const auto m = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 8);
    const auto r = rref(m);
    ASSERT_TRUE(is_rref(r)) << m.to_string();
    ASSERT_EQ(rref(r), r);
    ASSERT_EQ(rank(m), rank(r));
    ASSERT_EQ(rank(m), brute_rank(m)) << m.to_string();
  }
}

TEST(Gf2Properties, SolvableMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
    Gf2System s{random_matrix(rng, rows, cols), {}, {}};
    for (std::size_t r = 0; r < rows; ++r) s.rhs.push_back(rng() % 2);
    bool exists = false;
    for (std::uint32_t mask = 0; mask < (1u << cols) && !exists; ++mask) {
      exists = satisfies(s.matrix, s.rhs, bits_of(mask, cols));
    }
    ASSERT_EQ(solvable(s), exists) << s.matrix.to_string();
    const auto x = solve(s);
    ASSERT_EQ(x.has_value(), exists);
    if (x) ASSERT_TRUE(satisfies(s.matrix, s.rhs, *x));
  }
}

TEST(Gf2Properties, NullspaceSolutionsAreExactlyTheSpan) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 300; ++round) {
    const std::size_t width = 1 + rng() % 6;
    std::vector<Vec> vectors;
    const std::size_t count = rng() % 5;
    for (std::size_t i = 0; i < count; ++i) vectors.push_back(bits_of(static_cast<std::uint32_t>(rng()), width));
    std::set<Vec> span{Vec(width, false)};
    for (const auto& v : vectors) {
      std::set<Vec> next = span;
      for (const auto& s : span) {
        Vec sum(width);
        for (std::size_t i = 0; i < width; ++i) sum[i] = s[i] != v[i];
        next.insert(sum);
      }
      span = next;
    }
    const auto eqs = nullspace_basis(vectors, width);
    ASSERT_EQ(eqs.cols(), width);
    const Vec zero_rhs(eqs.rows(), false);
    std::set<Vec> solutions;
    for (std::uint32_t mask = 0; mask < (1u << width); ++mask) {
      const Vec x = bits_of(mask, width);
      if (satisfies(eqs, zero_rhs, x)) solutions.insert(x);
    }
    ASSERT_EQ(solutions, span);
  }
}

TEST(Gf2Matrix, WideRowsCrossWordBoundaries) {
  Gf2Matrix m(2, 130);
  m.set(0, 129, true);
  m.set(1, 64, true);
  m.set(1, 129, true);
  m.add_row(1, 0);
  EXPECT_FALSE(m.get(1, 129));
  EXPECT_TRUE(m.get(1, 64));
  m.swap_rows(0, 1);
  EXPECT_TRUE(m.get(0, 64));
  EXPECT_EQ(rank(m), 2u);
  m.flip(0, 64);
  EXPECT_TRUE(m.row_is_zero(0));
}
