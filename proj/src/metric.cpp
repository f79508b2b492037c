#include "tqc/metric.hpp"

#include "tqc/errors.hpp"

namespace tqc {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

std::string idx(std::initializer_list<int> ids) {
    std::string s = "(";
    bool first = true;
    for (int i : ids) {
        if (!first) s += ',';
        s += std::to_string(i);
        first = false;
    }
    return s + ")";
}

bool all_zero(const ElementSeries& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

ElementSeries add_element(const ElementSeries& a, const ElementSeries& b) {
    ElementSeries out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] + b[k]);
    return out;
}

TruncSpec widen_y(TruncSpec t, int extra) {
    t.y += extra;
    return t;
}

}  // namespace

ElementSeries zero_element(const CohomologyModel& m, const TruncSpec& trunc) {
    return ElementSeries(sz(m.rank), Series(m.space(), trunc));
}

ElementSeries generic_element(const CohomologyModel& m, Group g, const TruncSpec& trunc, const Rat& c) {
    ElementSeries v;
    for (int i = 0; i < m.rank; ++i) v.push_back(Series::variable(m.space(), trunc, {g, i}, c));
    return v;
}

ElementSeries basis_element(const CohomologyModel& m, int i, const TruncSpec& trunc) {
    ElementSeries v = zero_element(m, trunc);
    v[sz(i)] = Series::constant(m.space(), trunc, Rat(1));
    return v;
}

ElementSeries cup_series(const CohomologyModel& m, const ElementSeries& u, const ElementSeries& v) {
    if (static_cast<int>(u.size()) != m.rank || static_cast<int>(v.size()) != m.rank)
        throw StructuralError("cup_series: element length must equal the rank");
    const TruncSpec trunc = meet(u[0].trunc(), v[0].trunc());
    std::vector<SeriesBuilder> acc(sz(m.rank), SeriesBuilder(m.space(), trunc));
    for (int i = 0; i < m.rank; ++i) {
        if (u[sz(i)].is_zero()) continue;
        for (int j = 0; j < m.rank; ++j) {
            if (v[sz(j)].is_zero()) continue;
            bool any = false;
            for (int k = 0; k < m.rank && !any; ++k) any = !m.structure(i, j, k).is_zero();
            if (!any) continue;
            const Series prod = mul(u[sz(i)], v[sz(j)]);
            for (int k = 0; k < m.rank; ++k) {
                const Rat& c = m.structure(i, j, k);
                if (!c.is_zero()) acc[sz(k)].add(prod, c);
            }
        }
    }
    ElementSeries out;
    for (auto& b : acc) out.push_back(std::move(b).build());
    return out;
}

ElementSeries exp_element(const CohomologyModel& m, const ElementSeries& v) {
    for (const auto& s : v)
        if (!s.constant_term().is_zero()) throw DomainError("exp_element: argument has a constant term");
    const TruncSpec trunc = v.front().trunc();
    ElementSeries result = basis_element(m, 0, trunc);
    ElementSeries power = result;
    for (int n = 1;; ++n) {
        power = cup_series(m, power, v);
        for (auto& s : power) s *= Rat(1, n);
        if (all_zero(power)) break;
        result = add_element(result, power);
    }
    return result;
}

Series trace_series(const CohomologyModel& m, const ElementSeries& v) {
    SeriesBuilder b(m.space(), v.front().trunc());
    for (int k = 0; k < m.rank; ++k)
        if (!m.g(0, k).is_zero()) b.add(v[sz(k)], m.g(0, k));
    return std::move(b).build();
}

PhiData build_phi(const CohomologyModel& m, const TruncSpec& trunc) {
    const int n = m.rank;
    const VarSpace space = m.space();
    const TruncSpec wide = widen_y(trunc, 3);
    const Series phi_wide = trace_series(m, exp_element(m, generic_element(m, Group::y, wide)));

    PhiData d;
    d.rank = n;
    d.phi = phi_wide.truncated(trunc);
    d.phi2 = SeriesMatrix(n, space, trunc);
    d.phi3.assign(sz(n * n * n), Series(space, trunc));
    std::vector<Series> first;
    for (int i = 0; i < n; ++i) first.push_back(deriv(phi_wide, yv(i)));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Series second = deriv(first[sz(i)], yv(j));
            d.phi2(i, j) = d.phi2(j, i) = second.truncated(trunc);
            for (int k = j; k < n; ++k) {
                const Series third = deriv(second, yv(k)).truncated(trunc);
                for (auto [a, b, c] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                                       std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}})
                    d.phi3[sz((a * n + b) * n + c)] = third;
            }
        }

    d.up_low = SeriesMatrix(n, space, trunc);
    d.low_up = SeriesMatrix(n, space, trunc);
    d.upper = SeriesMatrix(n, space, trunc);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SeriesBuilder ul(space, trunc), lu(space, trunc);
            for (int e = 0; e < n; ++e) {
                if (!m.g_inv(i, e).is_zero()) ul.add(d.phi2(e, j), m.g_inv(i, e));
                if (!m.g_inv(e, i).is_zero()) lu.add(d.phi2(j, e), m.g_inv(e, i));
            }
            d.up_low(i, j) = std::move(ul).build();
            d.low_up(j, i) = std::move(lu).build();
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SeriesBuilder up(space, trunc);
            for (int e = 0; e < n; ++e)
                for (int f = 0; f < n; ++f) {
                    const Rat w = m.g_inv(i, e) * m.g_inv(f, j);
                    if (!w.is_zero()) up.add(d.phi2(e, f), w);
                }
            d.upper(i, j) = std::move(up).build();
        }
    return d;
}

DeformedMetric build_gamma(const CohomologyModel& m, const TruncSpec& trunc) {
    const PhiData phi = build_phi(m, trunc);
    const int n = m.rank;
    DeformedMetric g;
    g.rank = n;
    g.lower = SeriesMatrix(n, m.space(), trunc);
    g.upper = SeriesMatrix(n, m.space(), trunc);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.lower(i, j) = scale_group(phi.phi2(i, j), Group::y, Rat(-2));
            g.upper(i, j) = scale_group(phi.upper(i, j), Group::y, Rat(2));
        }
    for (const auto& s : phi.phi3) g.triple.push_back(scale_group(s, Group::y, Rat(-2)));

    const SeriesMatrix inverted = matrix_invert(g.lower);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (auto f = first_difference(inverted(i, j), g.upper(i, j), "gamma^" + idx({i, j})))
                throw VerificationError("build_gamma: closed-form gamma^ij disagrees with the inverse of gamma_ij at " +
                                        f->location + ", monomial " + f->monomial);
    return g;
}

std::vector<Series> mult_by_exp(const CohomologyModel& m, int p, const TruncSpec& trunc) {
    if (p < 0 || p >= m.rank) throw StructuralError("mult_by_exp: basis index out of range");
    const PhiData phi = build_phi(m, trunc);
    std::vector<Series> column;
    for (int e = 0; e < m.rank; ++e) column.push_back(phi.up_low(e, p));

    const ElementSeries direct =
        cup_series(m, exp_element(m, generic_element(m, Group::y, trunc)), basis_element(m, p, trunc));
    for (int e = 0; e < m.rank; ++e)
        if (auto f = first_difference(direct[sz(e)], column[sz(e)], "phi^" + std::to_string(e) + "_" + std::to_string(p)))
            throw VerificationError("mult_by_exp: index raising disagrees with direct cup expansion at " + f->location);
    return column;
}

CheckReport check_sum_formula(const CohomologyModel& m, const ElementSeries& y1, const ElementSeries& y2) {
    CheckReport r;
    r.check = "sumformula";
    const TruncSpec trunc = meet(y1.front().trunc(), y2.front().trunc());
    const ElementSeries e1 = exp_element(m, y1);
    const ElementSeries e2 = exp_element(m, y2);
    const Series lhs = trace_series(m, exp_element(m, add_element(y1, y2)));
    SeriesBuilder rhs(m.space(), trunc);
    std::vector<Series> d1, d2;
    for (int e = 0; e < m.rank; ++e) {
        d1.push_back(trace_series(m, cup_series(m, e1, basis_element(m, e, trunc))));
        d2.push_back(trace_series(m, cup_series(m, e2, basis_element(m, e, trunc))));
    }
    for (int e = 0; e < m.rank; ++e)
        for (int f = 0; f < m.rank; ++f)
            if (!m.g_inv(e, f).is_zero()) rhs.add(mul(d1[sz(e)], d2[sz(f)]), m.g_inv(e, f));
    r.expect_equal(lhs, std::move(rhs).build(), "phi(y'+y'')");
    return r;
}

CheckReport check_sum_formula(const CohomologyModel& m, const TruncSpec& trunc) {
    const int n = m.rank;
    const VarSpace space = m.space();
    CheckReport r = check_sum_formula(m, generic_element(m, Group::y, trunc), generic_element(m, Group::x, trunc));

    // phi_e by formal differentiation agrees with tr(exp(y) T_e).
    TruncSpec wide = trunc;
    wide.y += 1;
    wide.x += 1;
    const ElementSeries ey_wide = exp_element(m, generic_element(m, Group::y, wide));
    const ElementSeries ex_wide = exp_element(m, generic_element(m, Group::x, wide));
    const Series phi_y = trace_series(m, ey_wide);
    const Series phi_x = trace_series(m, ex_wide);
    std::vector<Series> dy, dx;
    for (int e = 0; e < n; ++e) {
        dy.push_back(deriv(phi_y, yv(e)).truncated(trunc));
        dx.push_back(deriv(phi_x, xv(e)).truncated(trunc));
        const Series closed = trace_series(m, cup_series(m, ey_wide, basis_element(m, e, wide))).truncated(trunc);
        r.expect_equal(dy.back(), closed, "phi_" + std::to_string(e) + " by derivative");
    }

    // First y'-derivative: phi_i(y'+y'') = sum_ef phi_ie(y') g^ef phi_f(y'').
    const PhiData phi = build_phi(m, trunc);
    const ElementSeries sum_wide = add_element(generic_element(m, Group::y, wide), generic_element(m, Group::x, wide));
    const Series phi_sum = trace_series(m, exp_element(m, sum_wide));
    for (int i = 0; i < n; ++i) {
        const Series lhs = deriv(phi_sum, yv(i)).truncated(trunc);
        SeriesBuilder rhs(space, trunc);
        for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f)
                if (!m.g_inv(e, f).is_zero()) rhs.add(mul(phi.phi2(i, e), dx[sz(f)]), m.g_inv(e, f));
        r.expect_equal(lhs, std::move(rhs).build(), "d/dy'_" + std::to_string(i) + " sum formula");
    }

    // phi^i_k^j = sum_l g_kl^i phi^lj.
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                SeriesBuilder lhs(space, trunc), rhs(space, trunc);
                for (int e = 0; e < n; ++e)
                    for (int f = 0; f < n; ++f) {
                        const Rat w = m.g_inv(i, e) * m.g_inv(f, j);
                        if (!w.is_zero()) lhs.add(phi.third(e, k, f), w);
                    }
                for (int l = 0; l < n; ++l)
                    if (!m.structure(k, l, i).is_zero()) rhs.add(phi.upper(l, j), m.structure(k, l, i));
                r.expect_equal(std::move(lhs).build(), std::move(rhs).build(), "phi^i_k^j " + idx({i, k, j}));
            }

    // gamma^ij = phi^ij(2y) = sum_ef phi^i_e(y) g^ef phi_f^j(y).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SeriesBuilder rhs(space, trunc);
            for (int e = 0; e < n; ++e)
                for (int f = 0; f < n; ++f)
                    if (!m.g_inv(e, f).is_zero()) rhs.add(mul(phi.up_low(i, e), phi.low_up(f, j)), m.g_inv(e, f));
            r.expect_equal(scale_group(phi.upper(i, j), Group::y, Rat(2)), std::move(rhs).build(),
                           "phi^ij(2y) " + idx({i, j}));
        }
    return r;
}

CheckReport check_cup_via_gamma(const CohomologyModel& m, const TruncSpec& trunc) {
    CheckReport r;
    r.check = "cupgamma";
    const DeformedMetric g = build_gamma(m, trunc);
    const int n = m.rank;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int f = 0; f < n; ++f) {
                SeriesBuilder lhs(m.space(), trunc);
                for (int e = 0; e < n; ++e) lhs.add(mul(g.gamma3(i, j, e), g.upper(e, f)));
                r.expect_equal(std::move(lhs).build(), Series::constant(m.space(), trunc, m.structure(i, j, f)),
                               "T_i T_j -> T_f " + idx({i, j, f}));
            }
    return r;
}

Rat gamma_upper_moment(const CohomologyModel& m, int e, int f, const std::vector<int>& c) {
    if (static_cast<int>(c.size()) != m.rank) throw StructuralError("gamma_upper_moment: multi-index length != rank");
    ClassVec power = basis_vec(m, 0);
    int total = 0;
    for (int k = 0; k < m.rank; ++k) {
        const ClassVec tk = basis_vec(m, k);
        for (int t = 0; t < c[sz(k)]; ++t) power = cup_vec(m, power, tk);
        total += c[sz(k)];
    }
    Rat sum(0);
    for (int a = 0; a < m.rank; ++a) {
        if (m.g_inv(e, a).is_zero()) continue;
        const ClassVec pa = cup_vec(m, power, basis_vec(m, a));
        for (int b = 0; b < m.rank; ++b) {
            if (m.g_inv(b, f).is_zero()) continue;
            sum.add_product(m.g_inv(e, a) * m.g_inv(b, f), trace(m, cup_vec(m, pa, basis_vec(m, b))));
        }
    }
    return sum * pow(Rat(2), total);
}

}  // namespace tqc
