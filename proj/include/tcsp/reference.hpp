#ifndef TCSP_REFERENCE_HPP
#define TCSP_REFERENCE_HPP

// Serial, unoptimized versions of the parallel kernels. They follow the
// definitions directly and exist for testing and benchmarking.

#include "tcsp/polymorphism.hpp"
#include "tcsp/pp_formula.hpp"
#include "tcsp/solver.hpp"

namespace tcsp::reference {

/// Enumerates every weak order on all variables of the formula.
TemporalRelation evaluate(const PpFormula& phi, const Template& tmpl);

/// Every orbit pair, joint order and zero position, without deduplication.
bool preserves(const TemporalRelation& r, const PolyOp& op);

/// First solution in for_each_weak_order order, without pruning.
Verdict oracle_solve(const Instance& a, std::size_t max_vars = kDefaultOracleVars);

}  // namespace tcsp::reference

#endif  // TCSP_REFERENCE_HPP
