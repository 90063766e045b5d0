#ifndef TCSP_ORDER_TYPE_HPP
#define TCSP_ORDER_TYPE_HPP

// Order types of rational tuples.
//
// A k-tuple over (Q;<) is determined up to automorphism by the weak order it
// induces on its coordinates. We store that weak order as dense ranks: the
// ranks used are exactly {0,...,m-1}, and rank r < rank s means the coordinate
// holds a smaller value. Every other module works on these values only; no
// rational number is ever materialized.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tcsp {

/// Largest arity an OrderTuple can hold. Joint orders of two k-tuples need 2k.
inline constexpr std::size_t kMaxTupleArity = 32;

/// Largest arity accepted by enumerate_weak_orders (ordered Bell(10) ~ 1.0e8).
inline constexpr std::size_t kMaxEnumerationArity = 10;

class OrderTuple {
 public:
  using value_type = std::uint8_t;

  OrderTuple() = default;

  /// Builds from ranks that must already be dense; throws ArityError otherwise.
  OrderTuple(std::initializer_list<int> dense_ranks);
  static OrderTuple from_dense(std::span<const int> dense_ranks);

  std::size_t arity() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  int operator[](std::size_t i) const noexcept { return ranks_[i]; }

  /// Number of distinct values, i.e. max rank + 1 (0 for the empty tuple).
  int levels() const noexcept { return levels_; }

  const value_type* begin() const noexcept { return ranks_.data(); }
  const value_type* end() const noexcept { return ranks_.data() + size_; }

  friend bool operator==(const OrderTuple& a, const OrderTuple& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }
  friend std::strong_ordering operator<=>(const OrderTuple& a, const OrderTuple& b) noexcept;

  /// `<0,0,1>`
  std::string to_string() const;

 private:
  friend OrderTuple normalize(std::span<const int> raw);
  friend OrderTuple normalize(std::span<const long> raw);
  friend class WeakOrderBuilder;

  std::array<value_type, kMaxTupleArity> ranks_{};
  std::uint8_t size_ = 0;
  std::uint8_t levels_ = 0;
};

std::ostream& operator<<(std::ostream& os, const OrderTuple& t);

/// Parses `<0,0,1>`. Ranks must be dense; `<0,2>` is a ParseError.
OrderTuple parse_order_tuple(std::string_view text);

/// Min-indicator tuple: bit i is set iff coordinate i holds a minimal value.
class BitTuple {
 public:
  BitTuple() = default;
  BitTuple(std::uint32_t bits, std::size_t arity) : bits_(bits), arity_(static_cast<std::uint8_t>(arity)) {}
  static BitTuple from_string(std::string_view bits);

  std::size_t arity() const noexcept { return arity_; }
  std::uint32_t mask() const noexcept { return bits_; }
  bool operator[](std::size_t i) const noexcept { return (bits_ >> i) & 1u; }
  int weight() const noexcept;

  friend bool operator==(const BitTuple&, const BitTuple&) = default;
  friend auto operator<=>(const BitTuple&, const BitTuple&) = default;

  /// `011` with coordinate 0 first.
  std::string to_string() const;

 private:
  std::uint32_t bits_ = 0;
  std::uint8_t arity_ = 0;
};

/// A joint weak order of two k-tuples, optionally with the position of the
/// constant 0 among its levels.
///
/// The zero marker is a slot in [0, 2m] for m joint levels: slot 2e+1 means
/// 0 equals the value of level e, slot 2e means 0 lies strictly between
/// levels e-1 and e (below everything for e = 0), slot 2m means above all.
struct JointOrder {
  OrderTuple left;
  OrderTuple right;
  OrderTuple joint;  // arity 2k: left coordinates first, then right
  std::optional<int> zero_slot;

  std::size_t arity() const noexcept { return left.arity(); }
  int left_rank(std::size_t i) const noexcept { return joint[i]; }
  int right_rank(std::size_t i) const noexcept { return joint[left.arity() + i]; }

  /// True iff the value at joint level `level` is <= 0. Requires a zero marker.
  bool nonpositive(int level) const;
};

OrderTuple normalize(std::span<const int> raw);
OrderTuple normalize(std::span<const long> raw);
inline OrderTuple normalize(std::initializer_list<int> raw) {
  return normalize(std::span<const int>(raw.begin(), raw.size()));
}

BitTuple chi(const OrderTuple& t);

/// Positions (0-based) holding a minimal value; never empty for arity >= 1.
std::vector<int> minset(const OrderTuple& t);

/// Order reversal.
OrderTuple dual_tuple(const OrderTuple& t);

/// Restriction to the listed coordinates (0-based, in the given order,
/// repetitions allowed), renormalized. Throws ArityError on an empty or
/// out-of-range index list.
OrderTuple project_tuple(const OrderTuple& t, std::span<const int> indices);
inline OrderTuple project_tuple(const OrderTuple& t, std::initializer_list<int> indices) {
  return project_tuple(t, std::span<const int>(indices.begin(), indices.size()));
}

/// Ordered Bell (Fubini) number, the count of weak orders on n elements.
std::uint64_t ordered_bell(std::size_t n);

/// Calls `visit` once for every weak order on n coordinates. Throws
/// SizeLimitError above kMaxEnumerationArity.
void for_each_weak_order(std::size_t n, const std::function<void(const OrderTuple&)>& visit);

/// All weak orders on n coordinates, sorted.
std::vector<OrderTuple> enumerate_weak_orders(std::size_t n);

/// Every joint order whose left half restricts to `left` and right half to
/// `right`. With `with_zero`, each one is repeated for all 2m+1 zero slots.
std::vector<JointOrder> joint_refinements(const OrderTuple& left, const OrderTuple& right,
                                          bool with_zero);

/// Streaming variant of joint_refinements without zero markers.
void for_each_joint(const OrderTuple& left, const OrderTuple& right,
                    const std::function<void(const OrderTuple&)>& visit);

/// Incremental weak-order construction by insertion of one coordinate at a
/// time. Inserting into an existing level or into a new level at gap g keeps
/// the relative order of the coordinates already present.
class WeakOrderBuilder {
 public:
  std::size_t size() const noexcept { return size_; }
  int levels() const noexcept { return levels_; }
  int rank(std::size_t i) const noexcept { return ranks_[i]; }

  /// Pushes a coordinate into existing level `level` (< levels()).
  void push_into(int level);
  /// Pushes a coordinate as a new level at gap `gap` (<= levels()).
  void push_new(int gap);
  /// Undoes the last push. Coordinates loaded by reset() cannot be popped.
  void pop();

  /// Replaces the contents with `t`.
  void reset(const OrderTuple& t);

  OrderTuple tuple() const;

 private:
  std::array<std::uint8_t, kMaxTupleArity> ranks_{};
  std::array<std::int8_t, kMaxTupleArity> new_gap_{};  // -1 when pushed into a level
  std::size_t size_ = 0;
  int levels_ = 0;
};

}  // namespace tcsp

#endif  // TCSP_ORDER_TYPE_HPP
