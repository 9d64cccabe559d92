#pragma once

#include "matrix.hpp"

#include <vector>

namespace toric {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
    RationalVector coeffs;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

/// maximize objective . x over free variables x subject to the constraints.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<LinearConstraint> constraints;
    RationalVector objective;  // empty means the zero objective

    void add(RationalVector coeffs, Relation rel, Rational rhs) {
        constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RationalVector point;
};

/// Exact two-phase dense simplex, Bland's rule (terminates without cycling).
LpResult solve(const LinearProgram& lp);

}  // namespace toric
