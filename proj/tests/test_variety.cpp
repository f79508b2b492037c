#include "doctest.h"

#include "tqc/variety.hpp"

#include <algorithm>

using namespace tqc;

namespace {

bool mentions(const ValidationReport& r, const std::string& text) {
    return std::any_of(r.violations.begin(), r.violations.end(),
                       [&](const std::string& v) { return v.find(text) != std::string::npos; });
}

Rat& cup_at(CohomologyModel& m, int i, int j, int k) {
    return m.cup[static_cast<std::size_t>((i * m.rank + j) * m.rank + k)];
}

}  // namespace

TEST_CASE("preset ids") {
    CHECK(parse_preset("p2") == PresetId::p2);
    CHECK(parse_preset("p1xp1") == PresetId::p1xp1);
    CHECK_FALSE(parse_preset("p4").has_value());
    CHECK(all_presets().size() == 4);
    for (PresetId id : all_presets()) CHECK(parse_preset(preset_name(id)) == id);
}

TEST_CASE("plane data") {
    const CohomologyModel m = preset(PresetId::p2);
    CHECK(m.rank == 3);
    CHECK(m.structure(1, 1, 2) == Rat(1));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(m.g(i, j) == Rat(i + j == 2 ? 1 : 0));
    CHECK(m.point_index() == 2);
    CHECK(m.hyperplane == ClassVec{Rat(0), Rat(1), Rat(0)});
}

TEST_CASE("quadric data") {
    const CohomologyModel m = preset(PresetId::p1xp1);
    CHECK(m.lattice_rank == 2);
    CHECK(m.structure(1, 2, 3) == Rat(1));
    for (int k = 0; k < 4; ++k) CHECK(m.structure(1, 1, k) == Rat(0));
    CHECK(m.divisor_degree(1, {1, 0}) == 0);
    CHECK(m.divisor_degree(1, {0, 1}) == 1);
    CHECK(m.divisor_degree(2, {3, 1}) == 3);
    CHECK(m.c1_degree({1, 1}) == 4);
}

TEST_CASE("cup_vec examples") {
    const CohomologyModel p2 = preset(PresetId::p2), p3 = preset(PresetId::p3);
    const ClassVec v{Rat(2), Rat(-1, 3), Rat(5)};
    CHECK(cup_vec(p2, basis_vec(p2, 0), v) == v);
    CHECK(cup_vec(p2, basis_vec(p2, 2), basis_vec(p2, 2)) == ClassVec(3, Rat(0)));
    CHECK(cup_vec(p3, basis_vec(p3, 1), basis_vec(p3, 2)) == basis_vec(p3, 3));
    CHECK_THROWS_AS(cup_vec(p2, basis_vec(p3, 1), v), StructuralError);
}

TEST_CASE("trace and pairing") {
    const CohomologyModel m = preset(PresetId::p2);
    CHECK(trace(m, basis_vec(m, 2)) == Rat(1));
    CHECK(trace(m, basis_vec(m, 1)) == Rat(0));
    CHECK(pair(m, basis_vec(m, 1), basis_vec(m, 1)) == Rat(1));
}

TEST_CASE("vdim examples") {
    CHECK(vdim(preset(PresetId::p2), {1}, 2) == 4);
    CHECK(vdim(preset(PresetId::p3), {1}, 2) == 6);
    CHECK(vdim(preset(PresetId::p1xp1), {1, 0}, 2) == 3);
    CHECK_THROWS_AS(vdim(preset(PresetId::p2), {0}, 2), DomainError);
    CHECK_THROWS_AS(vdim(preset(PresetId::p1xp1), {-1, 2}, 2), DomainError);
}

TEST_CASE("vdim is additive") {
    const CohomologyModel m = preset(PresetId::p1xp1);
    for (int n = 0; n < 5; ++n) CHECK(vdim(m, {2, 1}, n + 1) - vdim(m, {2, 1}, n) == 1);
    // vdim - (dimX - 3 + n) is linear in beta
    auto lin = [&](std::vector<int> b, int n) { return vdim(m, b, n) - (m.dim - 3 + n); };
    CHECK(lin({2, 1}, 3) == lin({1, 0}, 0) + lin({1, 1}, 4));
    CHECK(lin({3, 2}, 1) == 3 * lin({1, 0}, 0) + 2 * lin({0, 1}, 7));
}

TEST_CASE("presets validate with exact structure") {
    for (PresetId id : all_presets()) {
        const CohomologyModel m = preset(id);
        CAPTURE(m.name);
        CHECK(validate(m).ok());
        const int n = m.rank;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat s(0);
                for (int k = 0; k < n; ++k) s += m.g(i, k) * m.g_inv(k, j);
                CHECK(s == Rat(i == j ? 1 : 0));
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const ClassVec ti = basis_vec(m, i), tj = basis_vec(m, j), tk = basis_vec(m, k);
                    CHECK(cup_vec(m, cup_vec(m, ti, tj), tk) == cup_vec(m, ti, cup_vec(m, tj, tk)));
                    const Rat gijk = pair(m, cup_vec(m, ti, tj), tk);
                    CHECK(gijk == pair(m, cup_vec(m, tj, tk), ti));
                    CHECK(gijk == pair(m, cup_vec(m, tj, ti), tk));
                }
    }
}

TEST_CASE("asymmetric pairing is reported") {
    CohomologyModel m = preset(PresetId::p2);
    m.pairing[0][1] = Rat(1);
    const ValidationReport r = validate(m);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "g_01 != g_10"));
}

TEST_CASE("non-associative cup is reported") {
    CohomologyModel m = preset(PresetId::p2);
    cup_at(m, 1, 2, 2) = Rat(1);
    cup_at(m, 2, 1, 2) = Rat(1);
    const ValidationReport r = validate(m);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "cup not associative on triple (1,1,2)"));
}

TEST_CASE("other violations") {
    CohomologyModel m = preset(PresetId::p2);
    cup_at(m, 0, 1, 1) = Rat(2);
    CHECK(mentions(validate(m), "T_0 is not the unit"));

    m = preset(PresetId::p2);
    m.pairing_inv[2][0] = Rat(2);
    CHECK(mentions(validate(m), "g * g^-1 != identity"));

    m = preset(PresetId::p3);
    cup_at(m, 1, 2, 3) = Rat(2);
    CHECK(mentions(validate(m), "not commutative"));

    m = preset(PresetId::p2);
    m.codims.pop_back();
    CHECK(mentions(validate(m), "codims"));
}

TEST_CASE("complete_inverse") {
    CohomologyModel m = preset(PresetId::p1xp1);
    const RatMatrix inv = m.pairing_inv;
    m.pairing_inv.clear();
    complete_inverse(m);
    CHECK(m.pairing_inv == inv);
    m.pairing_inv.clear();
    m.pairing[0][3] = Rat(0);
    m.pairing[3][0] = Rat(0);
    CHECK_THROWS_AS(complete_inverse(m), DomainError);
}

TEST_CASE("space layout") {
    const VarSpace sp = preset(PresetId::p1xp1).space();
    CHECK(sp.q_vars() == 2);
    CHECK(sp.basis() == 4);
    CHECK(sp.lanes() == 10);
}
