#pragma once

#include "tqc/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tqc {

/// First offending coefficient of an identity check, in canonical order.
struct Failure {
    std::string location;  ///< index tuple or sub-identity, e.g. "(i,j,k,l)=(1,1,2,2)"
    std::string monomial;
    std::string lhs;
    std::string rhs;
};

struct CheckReport {
    std::string check;
    bool passed = true;
    std::optional<Failure> first_failure;
    std::size_t identities = 0;  ///< number of series identities compared

    /// Compares two series coefficientwise; records the first mismatch.
    /// Returns true when they agree.
    bool expect_equal(const Series& lhs, const Series& rhs, const std::string& location);
    void merge(const CheckReport& other);
};

/// First monomial (canonical order) where the coefficients differ.
std::optional<Failure> first_difference(const Series& lhs, const Series& rhs, const std::string& location);

}  // namespace tqc
