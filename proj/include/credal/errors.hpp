#pragma once

#include <stdexcept>
#include <string>

namespace credal {

// Base for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input exceeds the configured variable/constraint caps (see linprog.hpp)
// or the exhaustive-search guard of is_compatibility_structure.
struct SizeLimitExceeded : Error {
    using Error::Error;
};

// An event was required to belong to a system and does not (or vice versa).
struct MembershipError : Error {
    using Error::Error;
};

// Two objects built over different ground sets were combined.
struct GroundMismatch : Error {
    using Error::Error;
};

// A member of a compatibility-structure candidate is not a pi-system.
struct PiSystemError : Error {
    using Error::Error;
};

// Operation requires an extendable measure / prevision and got none.
struct NotExtendable : Error {
    using Error::Error;
};

// Conditioning event outside the domain or of measure zero.
struct ConditioningError : Error {
    using Error::Error;
};

// A polytope that must be nonempty is infeasible.
struct EmptyPolytope : Error {
    using Error::Error;
};

// affine_directions was given an anchor that is not feasible.
struct InfeasibleAnchor : Error {
    using Error::Error;
};

// Problem-file parsing failed; message pinpoints the field.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace credal
