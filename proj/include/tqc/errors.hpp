#pragma once

#include <stdexcept>
#include <string>

namespace tqc {

/// Operands that do not fit together: mismatched variable spaces, undeclared
/// variables, wrong vector lengths, incompatible truncations.
struct StructuralError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Mathematically undefined input: exp of a series with a constant term, a
/// singular constant matrix, an ineffective curve class.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A coefficient was requested beyond the truncation, where its value is
/// unknown rather than zero.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// The invariant engine has no recursion step reaching this key.
struct UnsupportedKeyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Insertions do not balance the virtual dimension.
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two independent constructions of the same object disagree.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tqc
