#include "tqc/variety.hpp"

#include "tqc/errors.hpp"

#include <sstream>

namespace tqc {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

CohomologyModel blank(std::string name, int dim, std::vector<int> codims, std::vector<std::string> names,
                      int lattice_rank) {
    CohomologyModel m;
    m.name = std::move(name);
    m.dim = dim;
    m.rank = static_cast<int>(codims.size());
    m.codims = std::move(codims);
    m.names = std::move(names);
    m.lattice_rank = lattice_rank;
    m.cup.assign(sz(m.rank * m.rank * m.rank), Rat(0));
    m.pairing.assign(sz(m.rank), std::vector<Rat>(sz(m.rank), Rat(0)));
    m.divisor_pairing.assign(sz(m.rank), std::vector<int>(sz(lattice_rank), 0));
    m.q_weights.assign(sz(lattice_rank), 1);
    return m;
}

void set_cup(CohomologyModel& m, int i, int j, int k, const Rat& c) {
    m.cup[sz((i * m.rank + j) * m.rank + k)] = c;
    m.cup[sz((j * m.rank + i) * m.rank + k)] = c;
}

// H*(P^n) with basis 1, h, ..., h^n.
CohomologyModel projective_space(int n) {
    std::vector<int> codims;
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) {
        codims.push_back(i);
        names.push_back(i == 0 ? "1" : i == 1 ? "h" : "h^" + std::to_string(i));
    }
    CohomologyModel m = blank("p" + std::to_string(n), n, codims, names, 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) set_cup(m, i, j, i + j, Rat(1));
    for (int i = 0; i <= n; ++i) m.pairing[sz(i)][sz(n - i)] = Rat(1);
    m.c1_pairing = {n + 1};
    m.divisor_pairing[1] = {1};
    m.hyperplane = basis_vec(m, 1);
    std::vector<int> two_points(sz(n + 1), 0);
    two_points[sz(n)] = 2;
    m.seeds.push_back({{1}, two_points, Rat(1)});
    complete_inverse(m);
    return m;
}

CohomologyModel p1_times_p1() {
    CohomologyModel m = blank("p1xp1", 2, {0, 1, 1, 2}, {"1", "H1", "H2", "pt"}, 2);
    for (int j = 0; j < 4; ++j) set_cup(m, 0, j, j, Rat(1));
    set_cup(m, 1, 2, 3, Rat(1));
    m.pairing[0][3] = m.pairing[3][0] = Rat(1);
    m.pairing[1][2] = m.pairing[2][1] = Rat(1);
    m.c1_pairing = {2, 2};
    // Lattice generator e_1 meets H2 once, e_2 meets H1 once.
    m.divisor_pairing[1] = {0, 1};
    m.divisor_pairing[2] = {1, 0};
    m.hyperplane = {Rat(0), Rat(1), Rat(1), Rat(0)};
    m.seeds.push_back({{1, 0}, {0, 0, 1, 1}, Rat(1)});
    m.seeds.push_back({{0, 1}, {0, 1, 0, 1}, Rat(1)});
    complete_inverse(m);
    return m;
}

std::string idx3(int i, int j, int k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

int CohomologyModel::divisor_degree(int k, const std::vector<int>& beta) const {
    int d = 0;
    const auto& row = divisor_pairing[sz(k)];
    for (std::size_t l = 0; l < row.size() && l < beta.size(); ++l) d += row[l] * beta[l];
    return d;
}

int CohomologyModel::c1_degree(const std::vector<int>& beta) const {
    int d = 0;
    for (std::size_t l = 0; l < c1_pairing.size() && l < beta.size(); ++l) d += c1_pairing[l] * beta[l];
    return d;
}

int CohomologyModel::point_index() const {
    int found = -1;
    for (int k = 0; k < rank; ++k)
        if (codims[sz(k)] == dim) {
            if (found >= 0) return -1;
            found = k;
        }
    return found;
}

VarSpace CohomologyModel::space() const { return VarSpace(lattice_rank, rank, q_weights); }

std::optional<PresetId> parse_preset(std::string_view id) {
    if (id == "p1") return PresetId::p1;
    if (id == "p2") return PresetId::p2;
    if (id == "p3") return PresetId::p3;
    if (id == "p1xp1") return PresetId::p1xp1;
    return std::nullopt;
}

std::string preset_name(PresetId id) {
    switch (id) {
        case PresetId::p1: return "p1";
        case PresetId::p2: return "p2";
        case PresetId::p3: return "p3";
        case PresetId::p1xp1: return "p1xp1";
    }
    return "?";
}

CohomologyModel preset(PresetId id) {
    switch (id) {
        case PresetId::p1: return projective_space(1);
        case PresetId::p2: return projective_space(2);
        case PresetId::p3: return projective_space(3);
        case PresetId::p1xp1: return p1_times_p1();
    }
    throw DomainError("unknown preset");
}

std::vector<PresetId> all_presets() { return {PresetId::p1, PresetId::p2, PresetId::p3, PresetId::p1xp1}; }

ClassVec basis_vec(const CohomologyModel& m, int i) {
    ClassVec v(sz(m.rank), Rat(0));
    v[sz(i)] = Rat(1);
    return v;
}

ClassVec cup_vec(const CohomologyModel& m, const ClassVec& u, const ClassVec& v) {
    if (static_cast<int>(u.size()) != m.rank || static_cast<int>(v.size()) != m.rank)
        throw StructuralError("cup_vec: class vectors must have length " + std::to_string(m.rank));
    ClassVec out(sz(m.rank), Rat(0));
    for (int i = 0; i < m.rank; ++i) {
        if (u[sz(i)].is_zero()) continue;
        for (int j = 0; j < m.rank; ++j) {
            if (v[sz(j)].is_zero()) continue;
            const Rat uv = u[sz(i)] * v[sz(j)];
            for (int k = 0; k < m.rank; ++k) {
                const Rat& c = m.structure(i, j, k);
                if (!c.is_zero()) out[sz(k)].add_product(uv, c);
            }
        }
    }
    return out;
}

Rat trace(const CohomologyModel& m, const ClassVec& v) {
    Rat t(0);
    for (int k = 0; k < m.rank; ++k)
        if (!v[sz(k)].is_zero()) t.add_product(v[sz(k)], m.g(0, k));
    return t;
}

Rat pair(const CohomologyModel& m, const ClassVec& u, const ClassVec& v) {
    Rat t(0);
    for (int i = 0; i < m.rank; ++i) {
        if (u[sz(i)].is_zero()) continue;
        for (int j = 0; j < m.rank; ++j)
            if (!v[sz(j)].is_zero()) t.add_product(u[sz(i)] * v[sz(j)], m.g(i, j));
    }
    return t;
}

int vdim(const CohomologyModel& m, const std::vector<int>& beta, int marks) {
    if (static_cast<int>(beta.size()) != m.lattice_rank)
        throw StructuralError("vdim: curve class has the wrong lattice rank");
    bool nonzero = false;
    for (int b : beta) {
        if (b < 0) throw DomainError("vdim: curve class is not effective");
        nonzero = nonzero || b > 0;
    }
    if (!nonzero) throw DomainError("vdim: curve class is zero");
    return m.dim + m.c1_degree(beta) + marks - 3;
}

void complete_inverse(CohomologyModel& m) {
    if (!m.pairing_inv.empty()) return;
    m.pairing_inv = invert(m.pairing);
}

ValidationReport validate(const CohomologyModel& m) {
    ValidationReport r;
    auto fail = [&r](std::string s) { r.violations.push_back(std::move(s)); };
    const int n = m.rank;
    if (n < 1) {
        fail("rank must be positive");
        return r;
    }
    if (static_cast<int>(m.codims.size()) != n) fail("codims has length != rank");
    if (static_cast<int>(m.cup.size()) != n * n * n) fail("cup must hold rank^3 structure constants");
    if (static_cast<int>(m.pairing.size()) != n) fail("pairing must be rank x rank");
    for (const auto& row : m.pairing)
        if (static_cast<int>(row.size()) != n) fail("pairing must be rank x rank");
    if (static_cast<int>(m.pairing_inv.size()) != n) fail("pairing_inv must be rank x rank");
    for (const auto& row : m.pairing_inv)
        if (static_cast<int>(row.size()) != n) fail("pairing_inv must be rank x rank");
    if (static_cast<int>(m.c1_pairing.size()) != m.lattice_rank) fail("c1_pairing has length != lattice_rank");
    if (static_cast<int>(m.divisor_pairing.size()) != n) fail("divisor_pairing must have one row per basis element");
    for (const auto& row : m.divisor_pairing)
        if (static_cast<int>(row.size()) != m.lattice_rank) fail("divisor_pairing rows must have lattice_rank entries");
    if (static_cast<int>(m.q_weights.size()) != m.lattice_rank) fail("q_weights has length != lattice_rank");
    if (!m.names.empty() && static_cast<int>(m.names.size()) != n) fail("names has length != rank");
    if (!m.hyperplane.empty() && static_cast<int>(m.hyperplane.size()) != n) fail("hyperplane has length != rank");
    if (!r.ok()) return r;

    try {
        (void)m.space();
    } catch (const StructuralError& e) {
        fail(e.what());
        return r;
    }

    for (int k = 0; k < n; ++k)
        if (m.codims[sz(k)] < 0 || m.codims[sz(k)] > m.dim)
            fail("codim of T_" + std::to_string(k) + " outside [0, dimX]");
    if (m.codims[0] != 0) fail("T_0 must have codimension 0");
    if (!r.ok()) return r;

    // Pairing: symmetric, graded, inverse consistent.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (m.g(i, j) != m.g(j, i))
                fail("g_" + std::to_string(i) + std::to_string(j) + " != g_" + std::to_string(j) + std::to_string(i));
            if (!m.g(i, j).is_zero() && m.codims[sz(i)] + m.codims[sz(j)] != m.dim)
                fail("g_" + std::to_string(i) + std::to_string(j) + " nonzero but d_i + d_j != dimX");
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat s(0);
            for (int k = 0; k < n; ++k) s.add_product(m.g(i, k), m.g_inv(k, j));
            if (s != Rat(i == j ? 1 : 0)) {
                fail("g * g^-1 != identity at (" + std::to_string(i) + "," + std::to_string(j) + ")");
                i = n;
                break;
            }
        }

    // Cup: unit, commutative, graded.
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (m.structure(0, j, k) != Rat(j == k ? 1 : 0))
                fail("T_0 is not the unit: g_0" + std::to_string(j) + "^" + std::to_string(k) + " wrong");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (m.structure(i, j, k) != m.structure(j, i, k))
                    fail("cup not commutative: g_ij^k != g_ji^k at " + idx3(i, j, k));
                if (!m.structure(i, j, k).is_zero() && m.codims[sz(i)] + m.codims[sz(j)] != m.codims[sz(k)])
                    fail("cup not graded at " + idx3(i, j, k));
            }

    // Associativity and Frobenius compatibility on basis triples.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const ClassVec ti = basis_vec(m, i), tj = basis_vec(m, j), tk = basis_vec(m, k);
                if (cup_vec(m, cup_vec(m, ti, tj), tk) != cup_vec(m, ti, cup_vec(m, tj, tk)))
                    fail("cup not associative on triple " + idx3(i, j, k));
                if (pair(m, cup_vec(m, ti, tj), tk) != pair(m, ti, cup_vec(m, tj, tk)))
                    fail("Frobenius compatibility g(a*b,c) = g(a,b*c) fails on triple " + idx3(i, j, k));
            }

    // Curve-class data.
    for (int k = 0; k < n; ++k)
        if (!m.is_divisor(k))
            for (int d : m.divisor_pairing[sz(k)])
                if (d != 0) fail("divisor_pairing row " + std::to_string(k) + " belongs to a non-divisor class");
    for (int w : m.q_weights)
        if (w < 1) fail("q_weights must be positive");
    for (const auto& s : m.seeds) {
        if (static_cast<int>(s.beta.size()) != m.lattice_rank || static_cast<int>(s.a.size()) != n)
            fail("seed has wrong vector lengths");
    }
    return r;
}

}  // namespace tqc
