#pragma once

#include <cstddef>
#include <vector>

#include "credal/errors.hpp"
#include "credal/rational.hpp"

namespace credal {

// General-form program over `vars` variables:
//   equalities:    row . x  = rhs
//   inequalities:  row . x <= rhs
//   nonneg[j]:     x_j >= 0 when true, x_j free when false
// nonneg empty means every variable is nonnegative.
struct LinearProgram {
    std::size_t vars = 0;
    std::vector<std::pair<std::vector<Rational>, Rational>> equalities;
    std::vector<std::pair<std::vector<Rational>, Rational>> inequalities;
    std::vector<bool> nonneg;
};

enum class Direction { Minimize, Maximize };

struct LPOutcome {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rational value;               // set when Optimal; equals objective . point
    std::vector<Rational> point;  // set when Optimal; satisfies all constraints exactly
};

// Variable/constraint cap; default 1 << 16, override with CREDAL_SIZE_CAP.
std::size_t size_cap();

// The probability simplex over n atoms: x >= 0, sum x = 1.
LinearProgram simplex_domain(std::size_t n);

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Exact two-phase simplex with Bland's anti-cycling rule.
LPOutcome solve(const LinearProgram& lp, const std::vector<Rational>& objective,
                Direction direction);

bool is_feasible_point(const LinearProgram& lp, const std::vector<Rational>& x);

// Reduced row echelon form with zero rows dropped: the canonical basis of
// the row span. Structural equality of outputs = equality of spans.
std::vector<std::vector<Rational>> reduced_basis(
    std::vector<std::vector<Rational>> rows);

// Canonical basis of {x in R^dim : row . x = 0 for every row}.
std::vector<std::vector<Rational>> nullspace(
    const std::vector<std::vector<Rational>>& rows, std::size_t dim);

// Canonical (reduced-basis) span of {x - anchor : x feasible for p}, found
// by LP probing along directions orthogonal to the span built so far.
// Requires a bounded feasible set containing the anchor.
std::vector<std::vector<Rational>> affine_directions(
    const LinearProgram& p, const std::vector<Rational>& anchor);

}  // namespace credal
