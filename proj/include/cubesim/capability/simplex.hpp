#pragma once

#include "cubesim/core/types.hpp"

namespace cubesim::capability {

struct LpResult {
    VecX x;
    double objective = 0.0;
    bool feasible = false;
    bool bounded = true;
};

/// Exact two-phase primal simplex for box-constrained equality LPs:
///   maximize c^T x  subject to  A x = b,  lower <= x <= upper,
/// with upper entries allowed to be +infinity. Bland's rule keeps pivoting
/// deterministic and cycle-free; problems here are tiny (a handful of rows,
/// tens of columns), so the basis is refactored densely each iteration.
LpResult solve_box_lp_max(const VecX &c, const MatX &a, const VecX &b, const VecX &lower,
                          const VecX &upper);

} // namespace cubesim::capability
