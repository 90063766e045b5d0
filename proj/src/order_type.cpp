#include "tcsp/order_type.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tcsp/error.hpp"

namespace tcsp {

namespace {

void check_arity(std::size_t n) {
  if (n > kMaxTupleArity) {
    throw SizeLimitError("tuple arity exceeds OrderTuple capacity", n, kMaxTupleArity);
  }
}

}  // namespace

OrderTuple::OrderTuple(std::initializer_list<int> dense_ranks)
    : OrderTuple(from_dense(std::span<const int>(dense_ranks.begin(), dense_ranks.size()))) {}

OrderTuple OrderTuple::from_dense(std::span<const int> dense_ranks) {
  OrderTuple t = normalize(dense_ranks);
  if (!std::equal(t.begin(), t.end(), dense_ranks.begin(), dense_ranks.end(),
                  [](std::uint8_t a, int b) { return a == b; })) {
    throw ArityError("ranks are not dense");
  }
  return t;
}

std::strong_ordering operator<=>(const OrderTuple& a, const OrderTuple& b) noexcept {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::string OrderTuple::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) out += ',';
    out += std::to_string(ranks_[i]);
  }
  out += '>';
  return out;
}

std::ostream& operator<<(std::ostream& os, const OrderTuple& t) { return os << t.to_string(); }

OrderTuple parse_order_tuple(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size() || text[pos] != '<') throw ParseError("expected '<'", 0, pos);
  ++pos;
  std::vector<int> raw;
  skip();
  if (pos < text.size() && text[pos] == '>') {
    ++pos;
  } else {
    while (true) {
      skip();
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw ParseError("expected a rank", 0, pos);
      raw.push_back(std::stoi(std::string(text.substr(start, pos - start))));
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == '>') {
        ++pos;
        break;
      }
      throw ParseError("expected ',' or '>'", 0, pos);
    }
  }
  skip();
  if (pos != text.size()) throw ParseError("trailing characters after order tuple", 0, pos);
  const OrderTuple t = normalize(raw);
  if (!std::equal(t.begin(), t.end(), raw.begin(), raw.end(), [](std::uint8_t a, int b) { return a == b; })) {
    throw ParseError("ranks of " + std::string(text) + " are not dense (expected " + t.to_string() + ")", 0, 0);
  }
  return t;
}

BitTuple BitTuple::from_string(std::string_view bits) {
  check_arity(bits.size());
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask |= 1u << i;
    } else if (bits[i] != '0') {
      throw ParseError("bit tuple must consist of 0 and 1", 0, i);
    }
  }
  return BitTuple(mask, bits.size());
}

int BitTuple::weight() const noexcept { return __builtin_popcount(bits_); }

std::string BitTuple::to_string() const {
  std::string out(arity_, '0');
  for (std::size_t i = 0; i < arity_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

bool JointOrder::nonpositive(int level) const {
  if (!zero_slot) throw PreconditionError("joint order carries no zero marker");
  return 2 * level + 1 <= *zero_slot;
}

namespace {

// Insertion sort: tuples are short and this runs in the innermost loops.
template <typename T>
std::size_t dense_ranks(std::span<const T> raw, std::uint8_t* out) {
  check_arity(raw.size());
  std::array<T, kMaxTupleArity> sorted;
  std::size_t distinct = 0;
  for (T v : raw) {
    std::size_t i = 0;
    while (i < distinct && sorted[i] < v) ++i;
    if (i < distinct && sorted[i] == v) continue;
    for (std::size_t j = distinct; j > i; --j) sorted[j] = sorted[j - 1];
    sorted[i] = v;
    ++distinct;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::lower_bound(sorted.begin(), sorted.begin() + distinct, raw[i]) -
                                       sorted.begin());
  }
  return distinct;
}

}  // namespace

OrderTuple normalize(std::span<const int> raw) {
  OrderTuple t;
  t.levels_ = static_cast<std::uint8_t>(dense_ranks(raw, t.ranks_.data()));
  t.size_ = static_cast<std::uint8_t>(raw.size());
  return t;
}

OrderTuple normalize(std::span<const long> raw) {
  OrderTuple t;
  t.levels_ = static_cast<std::uint8_t>(dense_ranks(raw, t.ranks_.data()));
  t.size_ = static_cast<std::uint8_t>(raw.size());
  return t;
}

BitTuple chi(const OrderTuple& t) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (t[i] == 0) mask |= 1u << i;
  }
  return BitTuple(mask, t.arity());
}

std::vector<int> minset(const OrderTuple& t) {
  std::vector<int> out;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (t[i] == 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

OrderTuple dual_tuple(const OrderTuple& t) {
  std::array<int, kMaxTupleArity> raw{};
  for (std::size_t i = 0; i < t.arity(); ++i) raw[i] = t.levels() - 1 - t[i];
  return normalize(std::span<const int>(raw.data(), t.arity()));
}

OrderTuple project_tuple(const OrderTuple& t, std::span<const int> indices) {
  if (indices.empty()) throw ArityError("projection to an empty index set");
  check_arity(indices.size());
  std::array<int, kMaxTupleArity> raw{};
  for (std::size_t i = 0; i < indices.size(); ++i) {
    int idx = indices[i];
    if (idx < 0 || static_cast<std::size_t>(idx) >= t.arity()) {
      throw ArityError("projection index " + std::to_string(idx) + " out of range for arity " +
                       std::to_string(t.arity()));
    }
    raw[i] = t[static_cast<std::size_t>(idx)];
  }
  return normalize(std::span<const int>(raw.data(), indices.size()));
}

std::uint64_t ordered_bell(std::size_t n) {
  // a(n) = sum_{k=1..n} C(n,k) a(n-k)
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;
    for (std::size_t k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

void WeakOrderBuilder::push_into(int level) {
  ranks_[size_] = static_cast<std::uint8_t>(level);
  new_gap_[size_] = -1;
  ++size_;
}

void WeakOrderBuilder::push_new(int gap) {
  for (std::size_t i = 0; i < size_; ++i) {
    if (ranks_[i] >= gap) ++ranks_[i];
  }
  ranks_[size_] = static_cast<std::uint8_t>(gap);
  new_gap_[size_] = static_cast<std::int8_t>(gap);
  ++size_;
  ++levels_;
}

void WeakOrderBuilder::pop() {
  --size_;
  int gap = new_gap_[size_];
  if (gap >= 0) {
    for (std::size_t i = 0; i < size_; ++i) {
      if (ranks_[i] > gap) --ranks_[i];
    }
    --levels_;
  }
}

void WeakOrderBuilder::reset(const OrderTuple& t) {
  std::copy(t.begin(), t.end(), ranks_.begin());
  std::fill(new_gap_.begin(), new_gap_.begin() + static_cast<std::ptrdiff_t>(t.arity()), std::int8_t{-1});
  size_ = t.arity();
  levels_ = t.levels();
}

OrderTuple WeakOrderBuilder::tuple() const {
  OrderTuple t;
  std::copy(ranks_.begin(), ranks_.begin() + static_cast<std::ptrdiff_t>(size_), t.ranks_.begin());
  t.size_ = static_cast<std::uint8_t>(size_);
  t.levels_ = static_cast<std::uint8_t>(levels_);
  return t;
}

namespace {

void extend(WeakOrderBuilder& b, std::size_t n, const std::function<void(const OrderTuple&)>& visit) {
  if (b.size() == n) {
    visit(b.tuple());
    return;
  }
  const int levels = b.levels();
  for (int level = 0; level < levels; ++level) {
    b.push_into(level);
    extend(b, n, visit);
    b.pop();
  }
  for (int gap = 0; gap <= levels; ++gap) {
    b.push_new(gap);
    extend(b, n, visit);
    b.pop();
  }
}

}  // namespace

void for_each_weak_order(std::size_t n, const std::function<void(const OrderTuple&)>& visit) {
  if (n > kMaxEnumerationArity) {
    throw SizeLimitError("weak-order enumeration", n, kMaxEnumerationArity);
  }
  WeakOrderBuilder b;
  extend(b, n, visit);
}

std::vector<OrderTuple> enumerate_weak_orders(std::size_t n) {
  std::vector<OrderTuple> out;
  if (n <= kMaxEnumerationArity) out.reserve(ordered_bell(n));
  for_each_weak_order(n, [&](const OrderTuple& t) { out.push_back(t); });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Merges the level sequences of the two halves; each step opens one joint
// level holding the next left level, the next right level, or both.
void merge_levels(const std::vector<std::vector<int>>& left_levels,
                  const std::vector<std::vector<int>>& right_levels, std::size_t li, std::size_t ri,
                  int level, std::array<int, kMaxTupleArity>& raw, std::size_t arity,
                  const std::function<void(const OrderTuple&)>& visit) {
  if (li == left_levels.size() && ri == right_levels.size()) {
    visit(normalize(std::span<const int>(raw.data(), arity)));
    return;
  }
  auto assign = [&](const std::vector<int>& coords, int value) {
    for (int c : coords) raw[static_cast<std::size_t>(c)] = value;
  };
  if (li < left_levels.size()) {
    assign(left_levels[li], level);
    merge_levels(left_levels, right_levels, li + 1, ri, level + 1, raw, arity, visit);
  }
  if (ri < right_levels.size()) {
    assign(right_levels[ri], level);
    merge_levels(left_levels, right_levels, li, ri + 1, level + 1, raw, arity, visit);
  }
  if (li < left_levels.size() && ri < right_levels.size()) {
    assign(left_levels[li], level);
    assign(right_levels[ri], level);
    merge_levels(left_levels, right_levels, li + 1, ri + 1, level + 1, raw, arity, visit);
  }
}

std::vector<std::vector<int>> level_sets(const OrderTuple& t, int offset) {
  std::vector<std::vector<int>> levels(static_cast<std::size_t>(t.levels()));
  for (std::size_t i = 0; i < t.arity(); ++i) {
    levels[static_cast<std::size_t>(t[i])].push_back(static_cast<int>(i) + offset);
  }
  return levels;
}

}  // namespace

void for_each_joint(const OrderTuple& left, const OrderTuple& right,
                    const std::function<void(const OrderTuple&)>& visit) {
  if (left.arity() != right.arity()) throw ArityError("joint refinement of tuples with different arity");
  const std::size_t k = left.arity();
  check_arity(2 * k);
  auto ll = level_sets(left, 0);
  auto rl = level_sets(right, static_cast<int>(k));
  std::array<int, kMaxTupleArity> raw{};
  merge_levels(ll, rl, 0, 0, 0, raw, 2 * k, visit);
}

std::vector<JointOrder> joint_refinements(const OrderTuple& left, const OrderTuple& right,
                                          bool with_zero) {
  std::vector<JointOrder> out;
  for_each_joint(left, right, [&](const OrderTuple& joint) {
    if (!with_zero) {
      out.push_back({left, right, joint, std::nullopt});
      return;
    }
    for (int slot = 0; slot <= 2 * joint.levels(); ++slot) {
      out.push_back({left, right, joint, slot});
    }
  });
  return out;
}

}  // namespace tcsp
