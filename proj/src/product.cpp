#include "tqc/product.hpp"

#include "tqc/errors.hpp"

#include <algorithm>
#include <functional>

namespace tqc {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

std::string tuple(std::initializer_list<int> ids) {
    std::string s = "(";
    bool first = true;
    for (int i : ids) {
        if (!first) s += ',';
        s += std::to_string(i);
        first = false;
    }
    return s + ")";
}

std::size_t at3(int n, int i, int j, int k) { return sz((i * n + j) * n + k); }

/// Restriction of gamma^ef to `trunc`.
SeriesMatrix upper_at(const DeformedMetric& met, const TruncSpec& trunc) { return met.upper.truncated(trunc); }

void require_caps(const Series& s, const TruncSpec& need, const char* what) {
    if (!within(need, s.trunc()))
        throw StructuralError(std::string(what) + ": input truncation does not cover the caps required");
}

/// sum_m g_ij^m s_mkl, the derivative of s_kl in the direction T_i T_j.
Series directional(const CohomologyModel& m, const std::vector<Series>& third, int i, int j, int k, int l,
                   const TruncSpec& trunc) {
    SeriesBuilder b(m.space(), trunc);
    for (int e = 0; e < m.rank; ++e)
        if (!m.structure(i, j, e).is_zero()) b.add(third[at3(m.rank, e, k, l)], m.structure(i, j, e));
    return std::move(b).build();
}

bool same_model(const CohomologyModel& a, const CohomologyModel& b) {
    return a.rank == b.rank && a.dim == b.dim && a.lattice_rank == b.lattice_rank && a.codims == b.codims &&
           a.cup == b.cup && a.pairing == b.pairing && a.c1_pairing == b.c1_pairing &&
           a.divisor_pairing == b.divisor_pairing;
}

}  // namespace

ProductTable ProductTable::truncated(const TruncSpec& caps) const {
    ProductTable out = *this;
    out.trunc = meet(trunc, caps);
    for (auto& s : out.constants) s = s.truncated(caps);
    return out;
}

std::vector<Series> third_derivatives(const CohomologyModel& m, const Series& s, const TruncSpec& trunc) {
    require_caps(s, TruncSpec{trunc.q, trunc.x + 3, trunc.y}, "third_derivatives");
    const int n = m.rank;
    std::vector<Series> out(sz(n * n * n));
    for (int i = 0; i < n; ++i) {
        const Series di = deriv(s, xv(i));
        for (int j = i; j < n; ++j) {
            const Series dij = deriv(di, xv(j));
            for (int k = j; k < n; ++k) {
                const Series t = deriv(dij, xv(k)).truncated(trunc);
                for (auto [a, b, c] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                                       std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}})
                    out[at3(n, a, b, c)] = t;
            }
        }
    }
    return out;
}

ProductTable build_product(const CohomologyModel& m, const PotentialSeries& pot, const DeformedMetric& met,
                           const TruncSpec& trunc) {
    if (!within(trunc, met.trunc())) throw StructuralError("build_product: metric truncation does not cover the table");
    const int n = m.rank;
    const VarSpace space = m.space();
    const std::vector<Series> g3 = third_derivatives(m, pot.gamma_pot, trunc);
    const std::vector<Series> p3 = third_derivatives(m, pot.full, trunc);
    const SeriesMatrix up = upper_at(met, trunc);

    ProductTable t;
    t.rank = n;
    t.trunc = trunc;
    t.provenance = m.name + ": cup + Gamma_ije gamma^ef";
    t.constants.assign(sz(n * n * n), Series(space, trunc));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int f = 0; f < n; ++f) {
                SeriesBuilder quantum(space, trunc), integral(space, trunc);
                quantum.add(Series::constant(space, trunc, m.structure(i, j, f)));
                for (int e = 0; e < n; ++e) {
                    if (up(e, f).is_zero()) continue;
                    if (!g3[at3(n, i, j, e)].is_zero()) quantum.add(mul(g3[at3(n, i, j, e)], up(e, f)));
                    if (!p3[at3(n, i, j, e)].is_zero()) integral.add(mul(p3[at3(n, i, j, e)], up(e, f)));
                }
                Series c = std::move(quantum).build();
                if (auto fail = first_difference(c, std::move(integral).build(), "C_ij^f " + tuple({i, j, f})))
                    throw VerificationError("build_product: the two forms of C disagree at " + fail->location +
                                            ", monomial " + fail->monomial);
                t.constants[at3(n, j, i, f)] = c;
                t.constants[at3(n, i, j, f)] = std::move(c);
            }
    return t;
}

ElementSeries multiply(const ProductTable& p, const ElementSeries& u, const ElementSeries& v) {
    if (static_cast<int>(u.size()) != p.rank || static_cast<int>(v.size()) != p.rank)
        throw StructuralError("multiply: element length must equal the rank");
    const VarSpace& space = p.constants.front().space();
    for (const auto& s : u)
        if (!(s.space() == space)) throw StructuralError("multiply: variable spaces differ");
    for (const auto& s : v)
        if (!(s.space() == space)) throw StructuralError("multiply: variable spaces differ");
    const TruncSpec trunc = meet(p.trunc, meet(u.front().trunc(), v.front().trunc()));
    std::vector<SeriesBuilder> acc(sz(p.rank), SeriesBuilder(space, trunc));
    for (int i = 0; i < p.rank; ++i) {
        if (u[sz(i)].is_zero()) continue;
        for (int j = 0; j < p.rank; ++j) {
            if (v[sz(j)].is_zero()) continue;
            const Series uv = mul(u[sz(i)], v[sz(j)]);
            for (int f = 0; f < p.rank; ++f)
                if (!p.c(i, j, f).is_zero()) acc[sz(f)].add(mul(uv, p.c(i, j, f)));
        }
    }
    ElementSeries out;
    for (auto& b : acc) out.push_back(std::move(b).build());
    return out;
}

CheckReport check_wdvv_deformed(const CohomologyModel& m, const PotentialSeries& pot, const DeformedMetric& met,
                                const TruncSpec& trunc) {
    CheckReport r;
    r.check = "wdvv";
    const int n = m.rank;
    const VarSpace space = m.space();
    const std::vector<Series> g3 = third_derivatives(m, pot.gamma_pot, trunc);
    const SeriesMatrix up = upper_at(met, trunc);

    // V_ij^f = sum_e Gamma_ije gamma^ef
    std::vector<Series> V(sz(n * n * n), Series(space, trunc));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int f = 0; f < n; ++f) {
                SeriesBuilder b(space, trunc);
                for (int e = 0; e < n; ++e)
                    if (!g3[at3(n, i, j, e)].is_zero() && !up(e, f).is_zero()) b.add(mul(g3[at3(n, i, j, e)], up(e, f)));
                V[at3(n, j, i, f)] = V[at3(n, i, j, f)] = std::move(b).build();
            }

    // W(ij,kl) is symmetric in i,j and in k,l; cache over unordered pairs.
    std::vector<std::optional<Series>> W(sz(n * n * n * n));
    auto w = [&](int i, int j, int k, int l) -> const Series& {
        if (i > j) std::swap(i, j);
        if (k > l) std::swap(k, l);
        auto& slot = W[sz(((i * n + j) * n + k) * n + l)];
        if (!slot) {
            SeriesBuilder b(space, trunc);
            b.add(directional(m, g3, i, j, k, l, trunc));
            b.add(directional(m, g3, k, l, i, j, trunc));
            for (int f = 0; f < n; ++f)
                if (!V[at3(n, i, j, f)].is_zero() && !g3[at3(n, f, k, l)].is_zero())
                    b.add(mul(V[at3(n, i, j, f)], g3[at3(n, f, k, l)]));
            slot = std::move(b).build();
        }
        return *slot;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    r.expect_equal(w(i, j, k, l), w(j, k, i, l), "(i,j,k,l)=" + tuple({i, j, k, l}));
    return r;
}

CheckReport check_p2_gamma222(const CohomologyModel& m, const PotentialSeries& pot, const DeformedMetric& met,
                              const TruncSpec& trunc) {
    if (!same_model(m, preset(PresetId::p2))) throw DomainError("gamma222: the relation is specific to P^2");
    (void)met;
    CheckReport r;
    r.check = "gamma222";
    const VarSpace space = m.space();
    const std::vector<Series> g3 = third_derivatives(m, pot.gamma_pot, trunc);
    auto G = [&](int i, int j, int k) -> const Series& { return g3[at3(3, i, j, k)]; };
    const Series e2 = exp_series(Series::variable(space, trunc, yv(0), Rat(2)));
    const Series y1 = Series::variable(space, trunc, yv(1));
    const Series y2 = Series::variable(space, trunc, yv(2));
    const Series two(Series::constant(space, trunc, Rat(2)));
    const Series rhs = e2 * (G(1, 1, 2) * G(1, 1, 2) - G(1, 1, 1) * G(1, 2, 2) +
                             two * y1 * (G(1, 2, 2) * G(1, 1, 2) - G(1, 1, 1) * G(2, 2, 2)) +
                             (two * y1 * y1 + two * y2) * (G(1, 2, 2) * G(1, 2, 2) - G(1, 1, 2) * G(2, 2, 2)));
    r.expect_equal(G(2, 2, 2), rhs, "Gamma_222");
    return r;
}

CheckReport check_trr(const CohomologyModel& m, const PotentialSeries& pot, const DeformedMetric& met,
                      const TruncSpec& trunc) {
    CheckReport r;
    r.check = "trr";
    const int n = m.rank;
    const VarSpace space = m.space();
    const Series& G = pot.gamma_pot;
    require_caps(G, TruncSpec{trunc.q, trunc.x + 3, trunc.y + 1}, "check_trr");
    const SeriesMatrix up = upper_at(met, trunc);

    std::vector<Series> d1, d2(sz(n * n));
    for (int i = 0; i < n; ++i) d1.push_back(deriv(G, xv(i)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d2[sz(i * n + j)] = deriv(d1[sz(i)], xv(j)).truncated(trunc);
    const std::vector<Series> g3 = third_derivatives(m, G, trunc);
    auto second_dir = [&](int i, int j, int k) {  // Gamma_{x_i (x_j x_k)}
        SeriesBuilder b(space, trunc);
        for (int e = 0; e < n; ++e)
            if (!m.structure(j, k, e).is_zero()) b.add(d2[sz(i * n + e)], m.structure(j, k, e));
        return std::move(b).build();
    };
    // U_i^f = sum_e Gamma_{x_i x_e} gamma^ef
    std::vector<Series> U(sz(n * n), Series(space, trunc));
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < n; ++f) {
            SeriesBuilder b(space, trunc);
            for (int e = 0; e < n; ++e)
                if (!d2[sz(i * n + e)].is_zero() && !up(e, f).is_zero()) b.add(mul(d2[sz(i * n + e)], up(e, f)));
            U[sz(i * n + f)] = std::move(b).build();
        }
    for (int i = 0; i < n; ++i) {
        const Series yi = deriv(G, yv(i));
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                const Series lhs = deriv(deriv(yi, xv(j)), xv(k)).truncated(trunc);
                SeriesBuilder rhs(space, trunc);
                rhs.add(second_dir(i, j, k));
                rhs.add(second_dir(k, i, j), Rat(-1));
                rhs.add(second_dir(j, i, k), Rat(-1));
                for (int f = 0; f < n; ++f)
                    if (!U[sz(i * n + f)].is_zero() && !g3[at3(n, f, j, k)].is_zero())
                        rhs.add(mul(U[sz(i * n + f)], g3[at3(n, f, j, k)]));
                r.expect_equal(lhs, std::move(rhs).build(), "(i,j,k)=" + tuple({i, j, k}));
            }
    }
    return r;
}

CheckReport check_associativity(const ProductTable& p) {
    CheckReport r;
    r.check = "assoc";
    const int n = p.rank;
    const VarSpace& space = p.constants.front().space();
    // L[ij,k]^g = sum_f C_ij^f C_fk^g, the coefficient of T_g in (T_i*T_j)*T_k.
    auto left = [&](int i, int j, int k, int g) {
        SeriesBuilder b(space, p.trunc);
        for (int f = 0; f < n; ++f)
            if (!p.c(i, j, f).is_zero() && !p.c(f, k, g).is_zero()) b.add(mul(p.c(i, j, f), p.c(f, k, g)));
        return std::move(b).build();
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int g = 0; g < n; ++g) {
                    SeriesBuilder right(space, p.trunc);
                    for (int f = 0; f < n; ++f)
                        if (!p.c(j, k, f).is_zero() && !p.c(i, f, g).is_zero()) right.add(mul(p.c(j, k, f), p.c(i, f, g)));
                    r.expect_equal(left(i, j, k, g), std::move(right).build(),
                                   "(i,j,k)=" + tuple({i, j, k}) + " component " + std::to_string(g));
                }
    return r;
}

CheckReport check_frobenius(const CohomologyModel& m, const ProductTable& p, const PotentialSeries& pot,
                            const DeformedMetric& met) {
    CheckReport r;
    r.check = "frobenius";
    const int n = p.rank;
    const VarSpace space = m.space();
    const TruncSpec trunc = p.trunc;
    const SeriesMatrix lower = met.lower.truncated(trunc);
    const SeriesMatrix up = upper_at(met, trunc);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                SeriesBuilder lhs(space, trunc), rhs(space, trunc);
                for (int f = 0; f < n; ++f) {
                    if (!p.c(i, j, f).is_zero() && !lower(f, k).is_zero()) lhs.add(mul(p.c(i, j, f), lower(f, k)));
                    if (!p.c(j, k, f).is_zero() && !lower(i, f).is_zero()) rhs.add(mul(p.c(j, k, f), lower(i, f)));
                }
                r.expect_equal(std::move(lhs).build(), std::move(rhs).build(), "gamma(T_i*T_j,T_k) " + tuple({i, j, k}));
            }
    const std::vector<Series> p3 = third_derivatives(m, pot.full, trunc);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int f = 0; f < n; ++f) {
                SeriesBuilder b(space, trunc);
                for (int e = 0; e < n; ++e)
                    if (!p3[at3(n, i, j, e)].is_zero() && !up(e, f).is_zero()) b.add(mul(p3[at3(n, i, j, e)], up(e, f)));
                r.expect_equal(p.c(i, j, f), std::move(b).build(), "C_ij^f = Phi_ije gamma^ef " + tuple({i, j, f}));
            }
    return r;
}

CheckReport check_y0_scaling(const ProductTable& p, const Series& gamma_pot) {
    CheckReport r;
    r.check = "dilaton";
    TruncSpec below = gamma_pot.trunc();
    if (below.x > 0) {
        below.x -= 1;
        r.expect_equal(deriv(gamma_pot, xv(0)).truncated(below), Series(gamma_pot.space(), below), "d/dx0 Gamma");
        below.x += 1;
    }
    if (below.y > 0) {
        below.y -= 1;
        r.expect_equal(deriv(gamma_pot, yv(0)).truncated(below), (gamma_pot * Rat(-2)).truncated(below),
                       "d/dy0 Gamma + 2 Gamma");
    }
    TruncSpec cbelow = p.trunc;
    if (cbelow.y > 0) {
        cbelow.y -= 1;
        for (int i = 0; i < p.rank; ++i)
            for (int j = 0; j < p.rank; ++j)
                for (int f = 0; f < p.rank; ++f)
                    r.expect_equal(deriv(p.c(i, j, f), yv(0)).truncated(cbelow),
                                   Series(p.constants.front().space(), cbelow), "d/dy0 C_ij^f " + tuple({i, j, f}));
    }
    return r;
}

CheckReport check_metric_duality(const CohomologyModel& m, const DeformedMetric& met) {
    CheckReport r;
    r.check = "duality";
    const TruncSpec trunc = met.trunc();
    const VarSpace space = m.space();
    const SeriesMatrix id = SeriesMatrix::identity(m.rank, space, trunc);
    const SeriesMatrix lu = met.lower * met.upper;
    const SeriesMatrix ul = met.upper * met.lower;
    for (int i = 0; i < m.rank; ++i)
        for (int j = 0; j < m.rank; ++j) {
            r.expect_equal(lu(i, j), id(i, j), "lower*upper " + tuple({i, j}));
            r.expect_equal(ul(i, j), id(i, j), "upper*lower " + tuple({i, j}));
            r.expect_equal(met.lower(i, j), met.lower(j, i), "lower symmetric " + tuple({i, j}));
            const std::vector<Var> ys = [&] {
                std::vector<Var> v;
                for (int k = 0; k < m.rank; ++k) v.push_back(yv(k));
                return v;
            }();
            r.expect_equal(set_zero(met.lower(i, j), ys), Series::constant(space, trunc, m.g(i, j)),
                           "gamma_ij(0) = g_ij " + tuple({i, j}));
        }
    return r;
}

CheckReport check_degree_zero(const CohomologyModel& m, const DeformedMetric& met) {
    CheckReport r;
    r.check = "degree0";
    const TruncSpec trunc = met.trunc();
    const VarSpace space = m.space();
    std::vector<std::vector<int>> bs;
    std::vector<int> cur(sz(m.rank), 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == m.rank) {
            bs.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[sz(k)] = e;
            rec(k + 1, left - e);
        }
        cur[sz(k)] = 0;
    };
    rec(0, trunc.y);
    for (int i = 0; i < m.rank; ++i)
        for (int j = 0; j < m.rank; ++j)
            for (int k = 0; k < m.rank; ++k) {
                SeriesBuilder b(space, trunc);
                for (const auto& bv : bs) {
                    const Rat v = degree_zero_formula(m, i, j, k, bv);
                    if (v.is_zero()) continue;
                    Mono mono;
                    Rat fact(1);
                    for (int l = 0; l < m.rank; ++l) {
                        mono.set(space.lane(yv(l)), bv[sz(l)]);
                        fact *= factorial(bv[sz(l)]);
                    }
                    b.add(mono, v / fact);
                }
                r.expect_equal(std::move(b).build(), met.gamma3(i, j, k), "sum_b <..>_0 = gamma_ijk " + tuple({i, j, k}));
            }
    return r;
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {"duality", "sumformula", "cupgamma", "degree0", "wdvv",
                                                   "gamma222", "trr",       "assoc",    "frobenius", "dilaton"};
    return names;
}

std::vector<CheckReport> run_checks(InvariantStore& store, const std::vector<std::string>& checks,
                                    const TruncSpec& trunc) {
    const CohomologyModel& m = store.model();
    for (const auto& c : checks)
        if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
            throw StructuralError("unknown check '" + c + "'");
    auto wanted = [&](const char* name) { return std::find(checks.begin(), checks.end(), name) != checks.end(); };
    if (wanted("gamma222") && !same_model(m, preset(PresetId::p2)))
        throw DomainError("gamma222: the relation is specific to P^2");

    const bool need_pot = wanted("wdvv") || wanted("gamma222") || wanted("trr") || wanted("assoc") ||
                          wanted("frobenius") || wanted("dilaton");
    // One potential serves every check: three extra x-orders for the third
    // derivatives, one extra y-order for the y-derivatives.
    const TruncSpec wide{trunc.q, trunc.x + 3, trunc.y + 1};
    const TruncSpec table_caps{trunc.q, trunc.x, trunc.y + (wanted("dilaton") ? 1 : 0)};

    std::optional<DeformedMetric> met_wide;
    std::optional<PotentialSeries> pot;
    std::optional<ProductTable> table;
    auto metric = [&]() -> const DeformedMetric& {
        if (!met_wide) met_wide = build_gamma(m, need_pot ? wide : trunc);
        return *met_wide;
    };
    auto potential = [&]() -> const PotentialSeries& {
        if (!pot) pot = full_potential(store, metric());
        return *pot;
    };
    auto product = [&]() -> const ProductTable& {
        if (!table) table = build_product(m, potential(), metric(), table_caps);
        return *table;
    };

    std::vector<CheckReport> out;
    for (const auto& name : check_names()) {
        if (!wanted(name.c_str())) continue;
        if (name == "duality") {
            out.push_back(check_metric_duality(m, build_gamma(m, trunc)));
        } else if (name == "sumformula") {
            CheckReport r = check_sum_formula(m, trunc);
            r.check = "sumformula";
            out.push_back(std::move(r));
        } else if (name == "cupgamma") {
            CheckReport r = check_cup_via_gamma(m, trunc);
            r.check = "cupgamma";
            out.push_back(std::move(r));
        } else if (name == "degree0") {
            out.push_back(check_degree_zero(m, build_gamma(m, trunc)));
        } else if (name == "wdvv") {
            out.push_back(check_wdvv_deformed(m, potential(), metric(), trunc));
        } else if (name == "gamma222") {
            out.push_back(check_p2_gamma222(m, potential(), metric(), trunc));
        } else if (name == "trr") {
            out.push_back(check_trr(m, potential(), metric(), trunc));
        } else if (name == "assoc") {
            out.push_back(check_associativity(product().truncated(trunc)));
        } else if (name == "frobenius") {
            out.push_back(check_frobenius(m, product().truncated(trunc), potential(), metric()));
        } else if (name == "dilaton") {
            out.push_back(check_y0_scaling(product(), potential().gamma_pot));
        }
    }
    return out;
}

}  // namespace tqc
