#ifndef TCSP_POLYMORPHISM_HPP
#define TCSP_POLYMORPHISM_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "tcsp/order_type.hpp"
#include "tcsp/relation.hpp"

namespace tcsp {

enum class OpKind { Min, Mi, Mx, Ll, Pp, Lex, Constant };

/// A binary operation on Q, or a constant, given by how it orders its outputs.
/// A dualized op is x,y -> -f(-x,-y).
struct PolyOp {
  OpKind kind = OpKind::Min;
  bool dualized = false;

  /// `min`, `mx`, `dual-ll`, `const`, ...
  std::string name() const;
  /// Inverse of name(); throws UnknownSymbolError.
  static PolyOp parse(std::string_view name);

  friend bool operator==(const PolyOp&, const PolyOp&) = default;
};

/// True for kinds whose output depends on the sign of the left argument.
bool needs_zero(OpKind kind) noexcept;

/// Order type of the coordinatewise image f(left_i, right_i) for any
/// realization of the joint order. For ll and pp the zero marker decides the
/// sign of each left value; other kinds ignore it. The constant op maps
/// everything to one value.
///
/// mi and mx send x to one of three copies a(x) < b(x) < g(x) that all lie
/// below the next larger value, so the output compares as (min, tag):
///   mi: tag a if x = y, b if x > y, g if x < y
///   mx: tag a if x != y, b if x = y
///
/// Throws PreconditionError for ll/pp without a zero marker.
OrderTuple apply_order_semantics(const PolyOp& op, const JointOrder& j);

/// Whether `op` preserves `r`: every image of two orbits of r, over every
/// joint order and sign pattern, lies in r again. Stops at the first
/// counterexample. Parallel over orbit pairs.
bool preserves(const TemporalRelation& r, const PolyOp& op);

/// Conjunction of preserves() over the relations of `t`.
bool preserves_template(const Template& t, const PolyOp& op);

enum class LogicClass { Datalog, FP, FPR2, NPComplete };

std::string_view to_string(LogicClass c) noexcept;
/// Inverse of to_string(LogicClass); throws UnknownSymbolError.
LogicClass parse_logic_class(std::string_view text);

/// The nine operations the classification looks at, in this order:
/// min, mi, mx, ll, dual-min, dual-mi, dual-mx, dual-ll, const.
const std::array<PolyOp, 9>& classification_ops();

struct Classification {
  LogicClass logic_class = LogicClass::NPComplete;
  /// preserved[i] refers to classification_ops()[i].
  std::array<bool, 9> preserved{};
  /// matrix[i][r]: classification_ops()[i] preserves relation r of the template.
  std::vector<std::vector<bool>> matrix;
  std::vector<std::string> symbols;

  bool preserved_by(const PolyOp& op) const;
  /// `FPR2 (preserved by: mx; not: min, mi, ...)`
  std::string summary() const;
};

Classification classify(const Template& t);

}  // namespace tcsp

#endif  // TCSP_POLYMORPHISM_HPP
