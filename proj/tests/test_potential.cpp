#include "doctest.h"

#include "oracles.hpp"
#include "tqc/potential.hpp"

using namespace tqc;

namespace {

InvariantKey plane_key(int d, std::vector<int> a, std::vector<int> b = {0, 0, 0}) { return {{d}, a, b}; }

Rat from_mpq(const mpq_class& q) { return Rat(q); }

std::vector<Rat> row_values(InvariantStore& s, const std::vector<int>& beta) {
    std::vector<Rat> out;
    for (const auto& r : characteristic_row(s, beta)) out.push_back(r.value);
    return out;
}

/// Balanced plane keys: a_2 = 3d - 1 - b_1 - 2 b_2, free in a_1.
std::vector<InvariantKey> plane_keys(int max_d) {
    std::vector<InvariantKey> out;
    for (int d = 1; d <= max_d; ++d)
        for (int b1 = 0; b1 <= 2; ++b1)
            for (int b2 = 0; b2 <= 1; ++b2)
                for (int a1 = 0; a1 <= 2; ++a1) {
                    const int a2 = 3 * d - 1 - b1 - 2 * b2;
                    if (a2 >= 0) out.push_back(plane_key(d, {0, a1, a2}, {0, b1, b2}));
                }
    return out;
}

}  // namespace

TEST_CASE("reduction steps") {
    InvariantStore s(preset(PresetId::p2));
    Reduction r = s.reduce(plane_key(1, {1, 0, 2}));
    CHECK(r.kind == Reduction::Kind::zero);

    r = s.reduce(plane_key(1, {0, 0, 1}, {1, 1, 0}));
    CHECK(r.kind == Reduction::Kind::scaled);
    CHECK(r.factor == Rat(-2));
    CHECK(r.key == plane_key(1, {0, 0, 1}, {0, 1, 0}));

    r = s.reduce(plane_key(1, {0, 1, 2}));
    CHECK(r.kind == Reduction::Kind::scaled);
    CHECK(r.factor == Rat(1));
    CHECK(r.key == plane_key(1, {0, 0, 2}));

    r = s.reduce(plane_key(2, {0, 2, 5}));
    CHECK(r.factor == Rat(2));

    r = s.reduce(plane_key(1, {0, 0, 2}));
    CHECK(r.kind == Reduction::Kind::irreducible);

    CHECK(s.reduce(plane_key(1, {0, 0, 3})).kind == Reduction::Kind::zero);
    CHECK_THROWS_AS(s.reduce(plane_key(0, {0, 0, 2})), DomainError);
    CHECK_THROWS_AS(s.value(InvariantKey{{1}, {0, 2}, {0, 0}}), StructuralError);
}

TEST_CASE("primary plane values") {
    InvariantStore s(preset(PresetId::p2));
    CHECK(s.value(plane_key(1, {0, 0, 2})) == Rat(1));
    CHECK(s.value(plane_key(3, {0, 0, 8})) == Rat(12));
    CHECK(s.value(plane_key(4, {0, 0, 11})) == Rat(620));
    CHECK(s.primary(plane_key(2, {0, 0, 5})) == Rat(1));
}

TEST_CASE("closed recursion for plane curves") {
    const auto n = oracle::kontsevich(6);
    InvariantStore s(preset(PresetId::p2));
    for (int d = 1; d <= 6; ++d) CHECK(s.value(plane_key(d, {0, 0, 3 * d - 1})) == Rat(n[static_cast<std::size_t>(d)]));
    CHECK(n[6] == 26312976);
}

TEST_CASE("single tangency to a line") {
    InvariantStore s(preset(PresetId::p2));
    CHECK(s.value(plane_key(1, {0, 0, 1}, {0, 1, 0})) == Rat(-1));
    CHECK(s.descendant(plane_key(1, {0, 0, 1}, {0, 1, 0})) == Rat(-1));
    CHECK(characteristic_number(s, {1}, 1, 1) == Rat(0));
    CHECK(characteristic_number(s, {1}, 2, 0) == Rat(1));
    CHECK(characteristic_number(s, {2}, 4, 1) == Rat(2));
}

TEST_CASE("tangency values against the scalar oracle") {
    const oracle::PlaneTangency o(4);
    InvariantStore s(preset(PresetId::p2));
    for (int d = 1; d <= 4; ++d)
        for (int b = 0; b <= 3 * d - 1; ++b) {
            const int a = 3 * d - 1 - b;
            CAPTURE(d);
            CAPTURE(b);
            CHECK(s.value(plane_key(d, {0, 0, a}, {0, b, 0})) == from_mpq(o.n(d, a, b)));
        }
}

TEST_CASE("characteristic rows against the scalar oracle") {
    const oracle::PlaneTangency o(4);
    InvariantStore s(preset(PresetId::p2));
    for (int d = 1; d <= 4; ++d) {
        const auto row = characteristic_row(s, {d});
        REQUIRE(row.size() == static_cast<std::size_t>(3 * d));
        for (std::size_t k = 0; k < row.size(); ++k) {
            CHECK(row[k].points == 3 * d - 1 - static_cast<int>(k));
            CHECK(row[k].tangents == static_cast<int>(k));
            CHECK(row[k].value == from_mpq(o.characteristic(d, row[k].points, row[k].tangents)));
        }
    }
    CHECK(row_values(s, {2}) == std::vector<Rat>{1, 2, 4, 4, 2, 1});
    CHECK(row_values(s, {3}) == std::vector<Rat>{12, 36, 100, 240, 480, 712, 756, 600, 400});
}

TEST_CASE("string, dilaton and divisor laws") {
    InvariantStore s(preset(PresetId::p2));
    for (const InvariantKey& k : plane_keys(3)) {
        CAPTURE(k.str());
        const Rat v = s.value(k);
        InvariantKey with_unit = k;
        with_unit.a[0] += 1;
        CHECK(s.value(with_unit) == Rat(0));
        InvariantKey dil = k;
        dil.b[0] += 2;
        CHECK(s.value(dil) == Rat(4) * v);
        InvariantKey div = k;
        div.a[1] += 1;
        CHECK(s.value(div) == Rat(k.beta[0]) * v);
    }
}

TEST_CASE("selection rule") {
    InvariantStore s(preset(PresetId::p2));
    CHECK(selection_balanced(s.model(), plane_key(1, {0, 0, 2})));
    CHECK_FALSE(selection_balanced(s.model(), plane_key(1, {0, 0, 3})));
    for (const InvariantKey& k : plane_keys(2)) {
        InvariantKey off = k;
        off.a[2] += 1;
        CHECK_FALSE(selection_balanced(s.model(), off));
        CHECK(s.value(off) == Rat(0));
    }
}

TEST_CASE("values do not depend on the recursion choice") {
    for (PresetId id : {PresetId::p2, PresetId::p3, PresetId::p1xp1}) {
        InvariantStore first(preset(id), ChoicePolicy::first);
        InvariantStore last(preset(id), ChoicePolicy::last);
        CAPTURE(preset_name(id));
        for (const auto& beta : effective_classes(first.model(), id == PresetId::p2 ? 3 : 2))
            CHECK(row_values(first, beta) == row_values(last, beta));
        const Series g1 = assemble_gamma(first, {2, 4, 2});
        const Series g2 = assemble_gamma(last, {2, 4, 2});
        CHECK(g1 == g2);
    }
}

TEST_CASE("small targets") {
    InvariantStore p3(preset(PresetId::p3));
    CHECK(p3.value({{1}, {0, 0, 0, 2}, {0, 0, 0, 0}}) == Rat(1));
    CHECK(p3.value({{1}, {0, 0, 4, 0}, {0, 0, 0, 0}}) == Rat(2));

    InvariantStore q(preset(PresetId::p1xp1));
    CHECK(q.value({{1, 0}, {0, 0, 1, 1}, {0, 0, 0, 0}}) == Rat(1));
    CHECK(q.value({{0, 1}, {0, 1, 0, 1}, {0, 0, 0, 0}}) == Rat(1));
    CHECK(q.value({{1, 1}, {0, 0, 0, 3}, {0, 0, 0, 0}}) == Rat(1));
    CHECK(q.value({{2, 2}, {0, 0, 0, 7}, {0, 0, 0, 0}}) == Rat(12));
    CHECK(row_values(q, {1, 1}) == std::vector<Rat>{1, 2, 4, 8});
    // the rulings are exchanged by the swap of factors
    CHECK(row_values(q, {2, 1}) == row_values(q, {1, 2}));
}

TEST_CASE("effective classes") {
    const auto q = effective_classes(preset(PresetId::p1xp1), 2);
    CHECK(q.size() == 5);
    for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i - 1][0] + q[i - 1][1] <= q[i][0] + q[i][1]);
    CHECK(effective_classes(preset(PresetId::p2), 3) == std::vector<std::vector<int>>{{1}, {2}, {3}});
}

TEST_CASE("assembled potential") {
    const auto n = oracle::kontsevich(4);
    InvariantStore s(preset(PresetId::p2));
    const TruncSpec t{4, 11, 2};
    const Series g = assemble_gamma(s, t);
    const VarSpace sp = g.space();

    // y = 0 slice against q^d e^{d x1} N_d x2^(3d-1)/(3d-1)!
    SeriesBuilder b(sp, {4, 11, 0});
    for (int d = 1; d <= 4; ++d)
        for (int a1 = 0; a1 + 3 * d - 1 <= 11; ++a1) {
            const Mono m = make_mono(sp, {{qv(0), d}, {xv(1), a1}, {xv(2), 3 * d - 1}});
            b.add(m, Rat(n[static_cast<std::size_t>(d)]) * pow(Rat(d), a1) / (factorial(a1) * factorial(3 * d - 1)));
        }
    CHECK(set_zero_group(g, Group::y).with_trunc({4, 11, 0}) == std::move(b).build());

    CHECK(deriv(g, xv(0)).is_zero());
    const TruncSpec below{4, 11, 1};
    CHECK(deriv(g, yv(0)).truncated(below) == (g * Rat(-2)).truncated(below));
    CHECK(set_zero(g, {qv(0)}).is_zero());
}

TEST_CASE("classical potential") {
    for (PresetId id : all_presets()) {
        const CohomologyModel m = preset(id);
        const DeformedMetric met = build_gamma(m, {0, 3, 3});
        const Series phi0 = classical_potential(m, met);
        for (int i = 0; i < m.rank; ++i)
            for (int j = 0; j < m.rank; ++j)
                for (int k = 0; k < m.rank; ++k) {
                    CHECK(x_third(phi0, i, j, k) == met.gamma3(i, j, k));
                    const Series at0 = set_zero_group(x_third(phi0, i, j, k), Group::y);
                    CHECK(at0.constant_term() == pair(m, cup_vec(m, basis_vec(m, i), basis_vec(m, j)), basis_vec(m, k)));
                }
    }
    const CohomologyModel p2 = preset(PresetId::p2);
    const Series phi0 = classical_potential(p2, build_gamma(p2, {0, 3, 0}));
    // g_011 = g_002 = 1, every other basis triple pairs to zero
    CHECK(phi0.coeff(make_mono(p2.space(), {{xv(0), 1}, {xv(1), 2}})) == Rat(1, 2));
    CHECK(phi0.coeff(make_mono(p2.space(), {{xv(0), 2}, {xv(2), 1}})) == Rat(1, 2));
    CHECK(phi0.coeff(make_mono(p2.space(), {{xv(0), 1}, {xv(1), 1}, {xv(2), 1}})) == Rat(0));
    CHECK(phi0.size() == 2);
}

TEST_CASE("full potential bundles both parts") {
    InvariantStore s(preset(PresetId::p2));
    const DeformedMetric met = build_gamma(s.model(), {2, 5, 2});
    const PotentialSeries p = full_potential(s, met);
    CHECK(p.full - p.gamma_pot == p.classical);
    CHECK(set_zero_group(set_zero_group(p.full, Group::y), Group::q) == set_zero_group(p.classical, Group::y));
}

TEST_CASE("degree zero formula") {
    const CohomologyModel m = preset(PresetId::p2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                CHECK(degree_zero_formula(m, i, j, k, {0, 0, 0}) ==
                      pair(m, cup_vec(m, basis_vec(m, i), basis_vec(m, j)), basis_vec(m, k)));
    CHECK(degree_zero_formula(m, 0, 0, 0, {0, 0, 1}) == Rat(-2));
    CHECK(degree_zero_formula(m, 0, 0, 1, {0, 1, 0}) == Rat(-2));
    CHECK(degree_zero_formula(m, 0, 0, 0, {0, 2, 0}) == Rat(4));
}

TEST_CASE("dimension errors") {
    InvariantStore s(preset(PresetId::p2));
    CHECK_FALSE(charnum_balanced(s.model(), {1}, 2, 1));
    CHECK_THROWS_AS(characteristic_number(s, {1}, 2, 1), DimensionError);
    InvariantStore p1(preset(PresetId::p1));
    CHECK_THROWS_AS(characteristic_row(p1, {1}), DimensionError);
}

TEST_CASE("models without seeds cannot reconstruct") {
    CohomologyModel m = preset(PresetId::p2);
    m.seeds.clear();
    InvariantStore s(m);
    CHECK_THROWS_AS(s.value(plane_key(1, {0, 0, 2})), UnsupportedKeyError);
    CHECK(s.value(plane_key(1, {1, 0, 2})) == Rat(0));
}

TEST_CASE("inconsistent seeds are rejected") {
    CohomologyModel m = preset(PresetId::p2);
    m.seeds.push_back({{1}, {0, 1, 2}, Rat(5)});
    CHECK_THROWS_AS(InvariantStore{m}, DomainError);
}

TEST_CASE("store determinism and warm start") {
    InvariantStore a(preset(PresetId::p2)), b(preset(PresetId::p2));
    const auto ra = row_values(a, {3});
    const auto rb = row_values(b, {3});
    CHECK(ra == rb);
    CHECK(a.entries() == b.entries());
    const auto entries = a.entries();
    for (std::size_t i = 1; i < entries.size(); ++i) CHECK(entries[i - 1].first < entries[i].first);

    InvariantStore warm(preset(PresetId::p2));
    warm.import_entries(entries);
    const StoreStats before = warm.stats();
    CHECK(row_values(warm, {3}) == ra);
    CHECK(warm.stats().computed == before.computed);
    CHECK(warm.entries() == entries);

    auto bad = entries;
    bad.back().second += Rat(1);
    InvariantStore c(preset(PresetId::p2));
    (void)row_values(c, {3});
    CHECK_THROWS_AS(c.import_entries(bad), VerificationError);
}

TEST_CASE("key labels") {
    const InvariantKey k = plane_key(2, {0, 1, 3}, {0, 1, 0});
    CHECK(k.marks() == 5);
    CHECK(k.str() == "<beta=(2) a=(0,1,3) b=(0,1,0)>");
    CHECK(InvariantKeyHash{}(k) == InvariantKeyHash{}(plane_key(2, {0, 1, 3}, {0, 1, 0})));
}
