#pragma once

#include <optional>

#include "catcert/rational.hpp"

namespace catcert {

using RMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

// Exact feasibility for { x >= 0 : A x = b }: phase-1 simplex over
// rationals with Bland's rule, so it terminates and never rounds.
// Returns a feasible point (a vertex) or nullopt when the system is
// infeasible. Redundant equality rows are fine.
std::optional<RVector> lp_feasible_point(const RMatrix& A, const RVector& b);

}  // namespace catcert
