#pragma once

#include <utility>
#include <vector>

#include "credal/linprog.hpp"
#include "credal/measure.hpp"
#include "credal/rational.hpp"
#include "credal/setsystem.hpp"

namespace credal {

// Fixed reference measure psi given by atom masses (nonnegative, sum 1).
struct ReferenceMeasure {
    GroundSet ground;
    std::vector<Rational> atom_mass;
    Rational of_event(EventSet a) const;
};

ReferenceMeasure make_reference(GroundSet g, std::vector<Rational> atom_mass);

// Convex set of measures cut out of the probability simplex by event
// equalities nu(E) = c, event inequalities nu(E) <= c, and gamble
// equalities nu . g = c (used by the gamble-level constructions).
struct CredalPolytope {
    GroundSet ground;
    std::vector<std::pair<EventSet, Rational>> equalities;
    std::vector<std::pair<EventSet, Rational>> inequalities;
    std::vector<std::pair<std::vector<Rational>, Rational>> gamble_equalities;
};

LinearProgram polytope_lp(const CredalPolytope& q);

// Increasing concave piecewise-linear distortion with gamma(0)=0 and
// gamma(1)=1; evaluation interpolates between breakpoints.
struct PiecewiseLinearConcave {
    std::vector<std::pair<Rational, Rational>> breakpoints;
    bool is_identity() const;
};

PiecewiseLinearConcave make_distortion(
    std::vector<std::pair<Rational, Rational>> breakpoints);

Rational distortion_value(const PiecewiseLinearConcave& gamma,
                          const Rational& x);

// m(A) = {nu in simplex : nu(E) = psi(E) for E in A}; psi itself is always
// feasible.
CredalPolytope credal(const ReferenceMeasure& psi, const SetSystem& a);

// m°(Q) = all events whose measure is constant = psi over Q; two LP solves
// per event. EmptyPolytope when Q is infeasible. Always pre-Dynkin.
SetSystem dual_credal(const ReferenceMeasure& psi, const CredalPolytope& q,
                      int threads = 1);

// m° of a finite set of measures; equals m° of their convex hull.
SetSystem dual_credal_finite(const ReferenceMeasure& psi,
                             const std::vector<std::vector<Rational>>& measures);

// m°(m(A)): contains the pre-Dynkin hull of A; idempotent.
SetSystem bipolar_closure(const ReferenceMeasure& psi, const SetSystem& a);

bool is_bipolar_closed(const ReferenceMeasure& psi, const SetSystem& a);

// True iff every constraint of Q holds over all of P, certified by LP.
// An empty P is a subset of everything.
bool polytope_subset(const CredalPolytope& p, const CredalPolytope& q);

// M(psi, gamma) = {nu in simplex : nu(F) <= gamma(psi(F)) for every event}.
CredalPolytope distorted_credal(const ReferenceMeasure& psi,
                                const PiecewiseLinearConcave& gamma);

// F01 = events of psi-mass 0 or 1; equals the pre-Dynkin hull of the
// zero-mass events.
SetSystem certainty_system(const ReferenceMeasure& psi);

}  // namespace credal
