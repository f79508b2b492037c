#include "tqc/report.hpp"

namespace tqc {

std::optional<Failure> first_difference(const Series& lhs, const Series& rhs, const std::string& location) {
    if (!(lhs.space() == rhs.space())) throw StructuralError("first_difference: variable spaces differ");
    const VarSpace& space = lhs.space();
    const TruncSpec caps = meet(lhs.trunc(), rhs.trunc());
    auto a = lhs.terms().begin();
    auto b = rhs.terms().begin();
    const auto ae = lhs.terms().end();
    const auto be = rhs.terms().end();
    auto skip = [&](auto& it, auto end) {
        while (it != end && !in_range(space, caps, it->mono)) ++it;
    };
    for (;;) {
        skip(a, ae);
        skip(b, be);
        if (a == ae && b == be) return std::nullopt;
        if (b == be || (a != ae && canonical_less(space, a->mono, b->mono)))
            return Failure{location, mono_string(space, a->mono), a->coeff.str(), "0/1"};
        if (a == ae || canonical_less(space, b->mono, a->mono))
            return Failure{location, mono_string(space, b->mono), "0/1", b->coeff.str()};
        if (a->coeff != b->coeff) return Failure{location, mono_string(space, a->mono), a->coeff.str(), b->coeff.str()};
        ++a;
        ++b;
    }
}

bool CheckReport::expect_equal(const Series& lhs, const Series& rhs, const std::string& location) {
    ++identities;
    auto f = first_difference(lhs, rhs, location);
    if (!f) return true;
    if (passed) first_failure = std::move(f);
    passed = false;
    return false;
}

void CheckReport::merge(const CheckReport& other) {
    identities += other.identities;
    if (!other.passed && passed) {
        passed = false;
        first_failure = other.first_failure;
    }
}

}  // namespace tqc
