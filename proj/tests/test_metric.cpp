#include "doctest.h"

#include "tqc/metric.hpp"

using namespace tqc;

namespace {

struct PlaneVars {
    VarSpace sp;
    TruncSpec t;
    Series one, y0, y1, y2;
};

PlaneVars plane_vars(const TruncSpec& t) {
    const VarSpace sp = preset(PresetId::p2).space();
    return {sp, t, Series::constant(sp, t, Rat(1)), Series::variable(sp, t, yv(0)), Series::variable(sp, t, yv(1)),
            Series::variable(sp, t, yv(2))};
}

}  // namespace

TEST_CASE("phi of the plane") {
    const CohomologyModel m = preset(PresetId::p2);
    const TruncSpec t{0, 0, 5};
    const PlaneVars v = plane_vars(t);
    const PhiData phi = build_phi(m, t);
    CHECK(phi.phi == exp_series(v.y0) * (v.y2 + v.y1 * v.y1 * Rat(1, 2)));
    CHECK(phi.phi2(2, 2).is_zero());
    CHECK(phi.phi2(0, 2) == exp_series(v.y0));
    CHECK(phi.third(1, 1, 2).is_zero());
    CHECK(phi.third(0, 1, 1) == exp_series(v.y0));
}

TEST_CASE("phi vanishes at the origin") {
    for (PresetId id : all_presets()) {
        const CohomologyModel m = preset(id);
        const PhiData phi = build_phi(m, {0, 0, 3});
        CHECK(phi.phi.constant_term() == Rat(0));
        for (int i = 0; i < m.rank; ++i)
            for (int j = 0; j < m.rank; ++j) CHECK(phi.phi2(i, j).constant_term() == m.g(i, j));
    }
}

TEST_CASE("deformed metric of the plane") {
    const CohomologyModel m = preset(PresetId::p2);
    const TruncSpec t{0, 0, 5};
    const PlaneVars v = plane_vars(t);
    const DeformedMetric met = build_gamma(m, t);
    const Series e2 = exp_series(v.y0 * Rat(2)), em2 = exp_series(v.y0 * Rat(-2));
    const Series zero(v.sp, t);

    const Series up[3][3] = {{zero, zero, e2},
                             {zero, e2, e2 * v.y1 * Rat(2)},
                             {e2, e2 * v.y1 * Rat(2), e2 * (v.y1 * v.y1 * Rat(2) + v.y2 * Rat(2))}};
    const Series low[3][3] = {{em2 * (v.y1 * v.y1 * Rat(2) - v.y2 * Rat(2)), em2 * v.y1 * Rat(-2), em2},
                              {em2 * v.y1 * Rat(-2), em2, zero},
                              {em2, zero, zero}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(met.upper(i, j) == up[i][j]);
            CHECK(met.lower(i, j) == low[i][j]);
        }
}

TEST_CASE("metric duality and symmetry on all presets") {
    for (PresetId id : all_presets()) {
        const CohomologyModel m = preset(id);
        CAPTURE(m.name);
        const TruncSpec t{0, 0, 5};
        const DeformedMetric met = build_gamma(m, t);
        const SeriesMatrix id_m = SeriesMatrix::identity(m.rank, met.lower.space(), t);
        CHECK(met.lower * met.upper == id_m);
        CHECK(met.upper * met.lower == id_m);
        CHECK(met.lower.transposed() == met.lower);
        for (int i = 0; i < m.rank; ++i)
            for (int j = 0; j < m.rank; ++j) {
                CHECK(set_zero_group(met.lower(i, j), Group::y) == Series::constant(met.lower.space(), t, m.g(i, j)));
                for (int k = 0; k < m.rank; ++k) {
                    CHECK(met.gamma3(i, j, k) == met.gamma3(j, i, k));
                    CHECK(met.gamma3(i, j, k) == met.gamma3(k, j, i));
                }
            }
    }
}

TEST_CASE("lower metric is the trace of exp(-2y) T_i T_j") {
    for (PresetId id : all_presets()) {
        const CohomologyModel m = preset(id);
        const TruncSpec t{0, 0, 4};
        const DeformedMetric met = build_gamma(m, t);
        const ElementSeries e = exp_element(m, generic_element(m, Group::y, t, Rat(-2)));
        for (int i = 0; i < m.rank; ++i)
            for (int j = 0; j < m.rank; ++j) {
                const ElementSeries p = cup_series(m, e, cup_series(m, basis_element(m, i, t), basis_element(m, j, t)));
                CHECK(trace_series(m, p) == met.lower(i, j));
            }
    }
}

TEST_CASE("mult_by_exp") {
    const CohomologyModel m = preset(PresetId::p2);
    const TruncSpec t{0, 0, 4};
    const PlaneVars v = plane_vars(t);
    const std::vector<Series> e0 = mult_by_exp(m, 0, t);
    for (int e = 0; e < 3; ++e) CHECK(e0[static_cast<std::size_t>(e)].constant_term() == Rat(e == 0 ? 1 : 0));
    const std::vector<Series> e2 = mult_by_exp(m, 2, t);
    CHECK(e2[2] == exp_series(v.y0));
    CHECK(e2[0].is_zero());
    CHECK(e2[1].is_zero());
    for (PresetId id : all_presets()) {
        const CohomologyModel mm = preset(id);
        for (int p = 0; p < mm.rank; ++p) {
            const std::vector<Series> r = mult_by_exp(mm, p, t);
            for (int e = 0; e < mm.rank; ++e)
                CHECK(r[static_cast<std::size_t>(e)].constant_term() == Rat(e == p ? 1 : 0));
        }
    }
}

TEST_CASE("sum formula on lines") {
    const CohomologyModel m = preset(PresetId::p2);
    const TruncSpec t{0, 3, 3};
    const VarSpace sp = m.space();
    ElementSeries y1 = zero_element(m, t), y2 = zero_element(m, t);
    y1[1] = Series::variable(sp, t, yv(1));
    y2[1] = Series::variable(sp, t, xv(1));
    const CheckReport r = check_sum_formula(m, y1, y2);
    CHECK(r.passed);

    // both sides are t^2/2 + tu + u^2/2
    const Series tt = y1[1], uu = y2[1];
    ElementSeries s = y1;
    s[1] = tt + uu;
    CHECK(trace_series(m, exp_element(m, s)) == tt * tt * Rat(1, 2) + tt * uu + uu * uu * Rat(1, 2));

    CHECK(check_sum_formula(m, y1, zero_element(m, t)).passed);
}

TEST_CASE("symbolic sum formula on all presets") {
    for (PresetId id : all_presets()) {
        const CheckReport r = check_sum_formula(preset(id), {0, 4, 4});
        CAPTURE(preset_name(id));
        CHECK(r.passed);
        CHECK(r.identities > 0);
    }
}

TEST_CASE("sum formula detects a wrong pairing inverse") {
    CohomologyModel m = preset(PresetId::p2);
    m.pairing_inv[1][1] = Rat(2);
    CHECK_FALSE(check_sum_formula(m, {0, 3, 3}).passed);
}

TEST_CASE("cup product via gamma") {
    for (PresetId id : all_presets()) {
        CAPTURE(preset_name(id));
        CHECK(check_cup_via_gamma(preset(id), {0, 0, 4}).passed);
    }
}

TEST_CASE("moments of the upper metric match its coefficients") {
    for (PresetId id : all_presets()) {
        const CohomologyModel m = preset(id);
        const TruncSpec t{0, 0, 4};
        const DeformedMetric met = build_gamma(m, t);
        for (int e = 0; e < m.rank; ++e)
            for (int f = 0; f < m.rank; ++f)
                for (const auto& term : met.upper(e, f).terms()) {
                    std::vector<int> c;
                    Rat fact(1);
                    for (int k = 0; k < m.rank; ++k) {
                        const int p = term.mono[met.upper.space().lane(yv(k))];
                        c.push_back(p);
                        fact *= factorial(p);
                    }
                    CHECK(gamma_upper_moment(m, e, f, c) == term.coeff * fact);
                }
        CHECK(gamma_upper_moment(m, 0, m.rank - 1, std::vector<int>(static_cast<std::size_t>(m.rank), 0)) ==
              m.g_inv(0, m.rank - 1));
    }
}

TEST_CASE("exp_element requires a nilpotent argument") {
    const CohomologyModel m = preset(PresetId::p1);
    const TruncSpec t{0, 0, 2};
    ElementSeries v = zero_element(m, t);
    v[0] = Series::constant(m.space(), t, Rat(1));
    CHECK_THROWS_AS(exp_element(m, v), DomainError);
}
