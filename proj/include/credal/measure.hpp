#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credal/linprog.hpp"
#include "credal/rational.hpp"
#include "credal/setsystem.hpp"

namespace credal {

// Finitely additive probability on a pre-Dynkin system: values defined
// exactly on the domain, mu(empty)=0, mu(Omega)=1, range [0,1], additive on
// disjoint pairs whose union stays in the domain.
struct PartialProbability {
    SetSystem domain;
    std::map<EventSet, Rational> values;
    const Rational& at(EventSet a) const;
};

// Lower/upper value for every one of the 2^n events, indexed by mask.
struct ImpreciseProbability {
    GroundSet ground;
    std::vector<Rational> lower;
    std::vector<Rational> upper;
};

struct Violation {
    std::string clause;
    std::string witness;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

// Reports every violated clause (domain is pre-Dynkin, values cover the
// domain, normalization, range, pairwise additivity) with witnesses.
ValidationReport validate_measure(const PartialProbability& mu);

// lower = inner extension (sup over contained domain events), upper = outer
// (inf over containing ones).
ImpreciseProbability inner_outer(const PartialProbability& mu);

// LP feasibility of the credal polytope {nu in simplex : nu(A) = mu(A) on
// the domain}; the witness is a full measure extending mu.
std::pair<bool, std::optional<std::vector<Rational>>> is_extendable(
    const PartialProbability& mu);

// Bounded search for families (B_1..B_m, A_1..A_q) from the domain with
// sum chi_B - sum chi_A >= 0 pointwise but sum mu(B) - sum mu(A) < 0.
// Enumeration order is fixed: total size ascending, then m ascending, then
// combinations with repetition over ascending masks. depth caps m + q.
std::optional<std::pair<std::vector<EventSet>, std::vector<EventSet>>>
horn_tarski_falsify(const PartialProbability& mu, int depth);

// Exact (min, max) of nu(A) over the credal polytope. NotExtendable when
// the polytope is empty.
std::pair<Rational, Rational> coherent_extension(const PartialProbability& mu,
                                                 EventSet a);

// The full 2^n table; per-event solves run under a fork-join contract.
ImpreciseProbability coherent_extension_table(const PartialProbability& mu,
                                              int threads = 1);

// D = {A : lower(A) = upper(A)} and whether it is pre-Dynkin.
std::pair<SetSystem, bool> precise_events(const ImpreciseProbability& ip);

// Checks (a) normalization, (b) conjugacy, (c) subadditivity of the upper
// value on disjoint pairs, (d) superadditivity of the lower value.
ValidationReport check_ip_axioms(const ImpreciseProbability& ip);

// Generalized Bayes: (lower(A cap B), upper(A cap B)) / mu(B) for B in the
// domain with mu(B) > 0; A may be any event.
std::pair<Rational, Rational> gbr_conditional(const PartialProbability& mu,
                                              EventSet a, EventSet b);

// The credal polytope M(mu, D) as a linear program over atom masses.
LinearProgram credal_lp(const PartialProbability& mu);

}  // namespace credal
