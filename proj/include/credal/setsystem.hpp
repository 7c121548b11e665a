#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "credal/errors.hpp"

namespace credal {

// Finite ground set Omega = {1..n}, 1 <= n <= 16. Element k of the written
// notation maps to bit k-1; that encoding fixes every tie-break order below.
struct GroundSet {
    int n = 0;
    bool operator==(const GroundSet&) const = default;
};

GroundSet ground(int n);  // validates 1 <= n <= 16

// An event is an n-bit mask over atom indices 0..n-1.
using EventSet = std::uint32_t;

EventSet full_event(GroundSet g);
EventSet complement(GroundSet g, EventSet a);
int popcount_event(EventSet a);

// "{}" for the empty event, digit string like "124" while n <= 9,
// "{1,10,12}" beyond.
std::string event_name(GroundSet g, EventSet a);
EventSet event_from_name(GroundSet g, const std::string& name);

// Canonical collection of events: duplicate-free, ascending by mask.
// Equality is structural.
struct SetSystem {
    GroundSet ground;
    std::vector<EventSet> events;
    bool operator==(const SetSystem&) const = default;
    bool contains(EventSet a) const;
};

SetSystem make_system(GroundSet g, std::vector<EventSet> events);
SetSystem power_set(GroundSet g);

// Pairwise-disjoint nonempty events covering Omega.
struct Partition {
    GroundSet ground;
    std::vector<EventSet> parts;
};

Partition make_partition(GroundSet g, std::vector<EventSet> parts);

// Contains the empty set, closed under complement and pairwise disjoint
// union (which gives all finite disjoint unions by induction).
bool is_pre_dynkin(const SetSystem& s);

// Least fixpoint of adding the empty set, complements and disjoint unions.
SetSystem pre_dynkin_hull(const SetSystem& a);

bool is_algebra(const SetSystem& s);

// A and B compatible in D: the intersection (equivalently the union) stays
// in D. Throws MembershipError unless both events belong to D.
bool is_compatible(const SetSystem& d, EventSet a, EventSet b);

// The unique family of maximal algebras whose union is D. Enumerates
// partitions of Omega into D-events (every algebra inside D is generated by
// such a partition) and keeps the refinement-maximal ones.
std::vector<SetSystem> blocks(const SetSystem& d);

// Algebra generated by a partition: all unions of its parts.
SetSystem partition_algebra(const Partition& p);

// Join = hull of the union; meet = plain intersection.
SetSystem lattice_join(const SetSystem& d1, const SetSystem& d2);
SetSystem lattice_meet(const SetSystem& d1, const SetSystem& d2);

// Events (including the empty one) whose only D-subsets are the empty set
// and themselves.
std::vector<EventSet> weak_atoms(const SetSystem& d);

// For B outside D: (B_D, A) with B_D in D maximal among D-subsets of B
// (smallest mask on ties), A = B \ B_D a weak atom outside D.
std::pair<EventSet, EventSet> decompose_atom(const SetSystem& d, EventSet b);

// Every member must be a pi-system (nonempty, closed under pairwise
// intersection); true iff every pi-system inside the union of members lies
// in some member. Exhaustive over pi-closed subsets of the union; guarded
// by SizeLimitExceeded above 24 distinct events.
bool is_compatibility_structure(const std::vector<SetSystem>& systems);

}  // namespace credal
