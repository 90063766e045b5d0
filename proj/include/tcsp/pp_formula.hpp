#ifndef TCSP_PP_FORMULA_HPP
#define TCSP_PP_FORMULA_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tcsp/relation.hpp"

namespace tcsp {

/// Largest number of distinct variables (free plus bound) evaluate() accepts.
inline constexpr std::size_t kMaxPpVariables = 12;

struct PpAtom {
  enum class Kind { Relation, Equality, Falsum };

  Kind kind = Kind::Relation;
  std::string symbol;     // Relation only
  std::vector<int> args;  // variable ids; ids < free_vars.size() are free
};

/// A primitive positive formula: exists bound. (atom & atom & ...).
///
/// Variables are numbered free first, then bound, so variable i is
/// free_vars[i] for i < free_vars.size() and bound_vars[i - free] otherwise.
struct PpFormula {
  std::vector<std::string> free_vars;
  std::vector<std::string> bound_vars;
  std::vector<PpAtom> atoms;

  std::size_t variable_count() const noexcept { return free_vars.size() + bound_vars.size(); }
  const std::string& variable_name(int id) const;
  std::string to_string() const;
};

/// Parses
///
///     [ '(' v1, ..., vk ')' ':' ] { 'exists' h1, ..., hm '.' } conj
///     conj := item { '&' item }
///     item := SYMBOL '(' v, ... ')' | v '=' w | 'false' | '(' conj ')'
///
/// Without the leading declaration, the free variables are the non-bound
/// variables in order of first occurrence. Throws ParseError with a
/// 0-based character position. Unknown relation symbols are only detected
/// by evaluate().
PpFormula parse_pp(std::string_view text);

/// The relation the formula defines in `tmpl`, over its free variables in
/// order. Throws UnknownSymbolError, ArityError, SizeLimitError, or
/// PreconditionError for a formula without free variables.
TemporalRelation evaluate(const PpFormula& phi, const Template& tmpl);

inline TemporalRelation evaluate(std::string_view text, const Template& tmpl) {
  return evaluate(parse_pp(text), tmpl);
}

}  // namespace tcsp

#endif  // TCSP_PP_FORMULA_HPP
