#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "credal/galois.hpp"
#include "credal/linprog.hpp"
#include "credal/measure.hpp"
#include "credal/rational.hpp"
#include "credal/setsystem.hpp"

namespace credal {

// A gamble assigns an exact rational payoff to every atom.
struct Gamble {
    GroundSet ground;
    std::vector<Rational> values;
    bool operator==(const Gamble&) const = default;
};

Gamble indicator(GroundSet g, EventSet a);

// Subspace of the gamble space in reduced-echelon basis form; equality of
// subspaces is structural equality of bases.
struct LinearSubspace {
    GroundSet ground;
    std::vector<std::vector<Rational>> basis;
    bool operator==(const LinearSubspace&) const = default;
    std::size_t dimension() const { return basis.size(); }
};

LinearSubspace make_subspace(GroundSet g,
                             std::vector<std::vector<Rational>> spanning);

bool subspace_contains(const LinearSubspace& s,
                       const std::vector<Rational>& v);

// Linear functional data on a family of subspaces: each subspace carries
// the basis the values are attached to (kept as given, not re-reduced).
struct PartialExpectation {
    struct Subspace {
        std::vector<std::vector<Rational>> basis;
        std::vector<Rational> values;
    };
    GroundSet ground;
    std::vector<Subspace> subspaces;
};

// One subspace per block of mu's domain, spanned by the indicator gambles
// of the block's partition atoms with values mu(atom).
PartialExpectation from_measure(const PartialProbability& mu);

// Value when f lies in some subspace (identical across overlaps once
// validation passes); nullopt when f is outside the domain.
std::optional<Rational> evaluate(const PartialExpectation& e, const Gamble& f);

// Checks basis independence, cross-consistency on pairwise subspace
// intersections, and per-subspace coherence E(f) >= inf f via the
// normalized LP over {f in subspace : f >= 0, sum_omega f(omega) = 1}
// (subspaces lacking the constants are checked with the constant gamble
// adjoined at value 1).
ValidationReport validate_partial_expectation(const PartialExpectation& e);

// LP feasibility of {nu in simplex : nu . g = E(g) for every basis gamble};
// the witness extends E to a full linear prevision.
std::pair<bool, std::optional<std::vector<Rational>>> is_extendable_prevision(
    const PartialExpectation& e);

// One homogeneous LP over concatenated subspace coordinates: minimize
// sum_i E(f_i) subject to sum_i f_i >= 0 pointwise, normalized by
// sum_i E(f_i) >= -1. A -1 optimum yields a witnessing family (one gamble
// per subspace, zeros allowed); nullopt when no violation exists.
std::optional<std::vector<std::pair<std::size_t, Gamble>>> violation_search(
    const PartialExpectation& e);

// (min, max) of nu . f over the prevision credal polytope.
std::pair<Rational, Rational> natural_extension(const PartialExpectation& e,
                                                const Gamble& f);

// S = {f : nu . f constant over Q} = orthogonal complement of the affine
// directions of Q; contains all constant gambles.
LinearSubspace precise_gambles(const CredalPolytope& q);

// m(G) = {nu in simplex : nu . g = psi . g for g in G}.
CredalPolytope generalized_credal(const ReferenceMeasure& psi,
                                  const std::vector<Gamble>& gambles);

// m°(Q) = {f : nu . f = psi . f for all nu in Q} = orthogonal complement
// of span{nu - psi : nu in Q}.
LinearSubspace generalized_dual_credal(const ReferenceMeasure& psi,
                                       const CredalPolytope& q);
LinearSubspace generalized_dual_credal(
    const ReferenceMeasure& psi,
    const std::vector<std::vector<Rational>>& measures);

}  // namespace credal
