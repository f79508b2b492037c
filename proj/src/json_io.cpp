#include "tqc/json_io.hpp"

#include "tqc/errors.hpp"

namespace tqc {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

Group group_from(const json& j) {
    const std::string g = j.get<std::string>();
    if (g == "q") return Group::q;
    if (g == "x") return Group::x;
    if (g == "y") return Group::y;
    throw StructuralError("unknown variable group '" + g + "'");
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw StructuralError(std::string("missing field '") + name + "'");
    return j.at(name);
}

std::vector<int> ints(const json& j, const char* what) {
    if (!j.is_array()) throw StructuralError(std::string(what) + " must be an array of integers");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw StructuralError(std::string(what) + " must be an array of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

std::vector<Rat> rats(const json& j, const char* what) {
    if (!j.is_array()) throw StructuralError(std::string(what) + " must be an array of rationals");
    std::vector<Rat> out;
    for (const auto& v : j) out.push_back(rat_from_json(v));
    return out;
}

json rat_row(const std::vector<Rat>& v) {
    json row = json::array();
    for (const auto& r : v) row.push_back(r.str());
    return row;
}

}  // namespace

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw StructuralError("not an exact rational: " + j.dump());
}

json series_to_json(const Series& s) {
    const VarSpace& space = s.space();
    json j;
    j["vars"] = {{"q", space.q_vars()}, {"x", space.basis()}, {"y", space.basis()}, {"q_weights", space.q_weights()}};
    j["trunc"] = {{"q", s.trunc().q}, {"x", s.trunc().x}, {"y", s.trunc().y}};
    json terms = json::array();
    for (const auto& t : s.terms()) {
        json m = json::array();
        for (int lane = 0; lane < space.lanes(); ++lane) {
            const int e = t.mono[lane];
            if (e == 0) continue;
            const Var v = space.var_of_lane(lane);
            m.push_back(json::array({group_name(v.group), v.index, e}));
        }
        terms.push_back({{"m", std::move(m)}, {"c", t.coeff.str()}});
    }
    j["terms"] = std::move(terms);
    return j;
}

Series series_from_json(const json& j) {
    const json& vars = field(j, "vars");
    const int q = field(vars, "q").get<int>();
    const int x = field(vars, "x").get<int>();
    if (field(vars, "y").get<int>() != x) throw StructuralError("series JSON: x and y counts differ");
    std::vector<int> weights;
    if (vars.contains("q_weights")) weights = ints(vars.at("q_weights"), "q_weights");
    const VarSpace space(q, x, weights);
    const json& tj = field(j, "trunc");
    const TruncSpec trunc{field(tj, "q").get<int>(), field(tj, "x").get<int>(), field(tj, "y").get<int>()};
    std::vector<Series::Term> terms;
    for (const auto& t : field(j, "terms")) {
        Mono m;
        for (const auto& p : field(t, "m")) {
            if (!p.is_array() || p.size() != 3) throw StructuralError("series JSON: monomial entries are [group, index, exponent]");
            const Var v{group_from(p[0]), p[1].get<int>()};
            const int e = p[2].get<int>();
            if (e < 0 || e > kMaxCap) throw StructuralError("series JSON: exponent out of range");
            m.set(space.lane(v), e);
        }
        if (!in_range(space, trunc, m)) throw StructuralError("series JSON: term beyond the stated truncation");
        terms.push_back({m, rat_from_json(field(t, "c"))});
    }
    return Series::from_terms(space, trunc, std::move(terms));
}

json model_to_json(const CohomologyModel& m) {
    json j;
    j["name"] = m.name;
    j["dimX"] = m.dim;
    j["lattice_rank"] = m.lattice_rank;
    j["codims"] = m.codims;
    j["names"] = m.names;
    json cup = json::array();
    for (int i = 0; i < m.rank; ++i)
        for (int jj = 0; jj < m.rank; ++jj)
            for (int k = 0; k < m.rank; ++k)
                if (!m.structure(i, jj, k).is_zero()) cup.push_back(json::array({i, jj, k, m.structure(i, jj, k).str()}));
    j["cup"] = std::move(cup);
    json pairing = json::array(), inv = json::array();
    for (const auto& row : m.pairing) pairing.push_back(rat_row(row));
    for (const auto& row : m.pairing_inv) inv.push_back(rat_row(row));
    j["pairing"] = std::move(pairing);
    j["pairing_inv"] = std::move(inv);
    j["c1_pairing"] = m.c1_pairing;
    j["divisor_pairing"] = m.divisor_pairing;
    j["q_weights"] = m.q_weights;
    j["hyperplane"] = rat_row(m.hyperplane);
    json seeds = json::array();
    for (const auto& s : m.seeds) seeds.push_back({{"beta", s.beta}, {"a", s.a}, {"value", s.value.str()}});
    j["seeds"] = std::move(seeds);
    return j;
}

CohomologyModel model_from_json(const json& j) {
    try {
        CohomologyModel m;
        m.name = j.contains("name") ? j.at("name").get<std::string>() : std::string("custom");
        m.dim = field(j, "dimX").get<int>();
        m.lattice_rank = field(j, "lattice_rank").get<int>();
        m.codims = ints(field(j, "codims"), "codims");
        m.rank = static_cast<int>(m.codims.size());
        if (m.rank < 1 || m.rank > kMaxVars / 2) throw StructuralError("model rank must lie in [1, 8]");
        if (m.lattice_rank < 0 || m.lattice_rank + 2 * m.rank > kMaxVars)
            throw StructuralError("model has too many variables for the series engine");
        if (j.contains("names"))
            for (const auto& s : j.at("names")) m.names.push_back(s.get<std::string>());
        m.cup.assign(sz(m.rank * m.rank * m.rank), Rat(0));
        for (const auto& e : field(j, "cup")) {
            if (!e.is_array() || e.size() != 4) throw StructuralError("cup entries are [i, j, k, value]");
            const int a = e[0].get<int>(), b = e[1].get<int>(), c = e[2].get<int>();
            if (a < 0 || b < 0 || c < 0 || a >= m.rank || b >= m.rank || c >= m.rank)
                throw StructuralError("cup entry index out of range");
            m.cup[sz((a * m.rank + b) * m.rank + c)] = rat_from_json(e[3]);
        }
        for (const auto& row : field(j, "pairing")) m.pairing.push_back(rats(row, "pairing rows"));
        if (j.contains("pairing_inv"))
            for (const auto& row : j.at("pairing_inv")) m.pairing_inv.push_back(rats(row, "pairing_inv rows"));
        m.c1_pairing = ints(field(j, "c1_pairing"), "c1_pairing");
        for (const auto& row : field(j, "divisor_pairing")) m.divisor_pairing.push_back(ints(row, "divisor_pairing rows"));
        if (j.contains("q_weights"))
            m.q_weights = ints(j.at("q_weights"), "q_weights");
        else
            m.q_weights.assign(sz(m.lattice_rank), 1);
        if (j.contains("hyperplane")) m.hyperplane = rats(j.at("hyperplane"), "hyperplane");
        if (j.contains("seeds"))
            for (const auto& s : j.at("seeds"))
                m.seeds.push_back({ints(field(s, "beta"), "seed beta"), ints(field(s, "a"), "seed a"),
                                   rat_from_json(field(s, "value"))});
        if (static_cast<int>(m.pairing.size()) == m.rank && m.pairing_inv.empty()) {
            bool square = true;
            for (const auto& row : m.pairing) square = square && static_cast<int>(row.size()) == m.rank;
            if (square) complete_inverse(m);
        }
        return m;
    } catch (const json::exception& e) {
        throw StructuralError(std::string("model JSON: ") + e.what());
    }
}

json store_to_json(const InvariantStore& store) {
    json entries = json::array();
    for (const auto& [key, v] : store.entries())
        entries.push_back({{"beta", key.beta}, {"a", key.a}, {"b", key.b}, {"value", v.str()}});
    return {{"variety", store.model().name}, {"entries", std::move(entries)}};
}

std::vector<std::pair<InvariantKey, Rat>> store_entries_from_json(const json& j) {
    std::vector<std::pair<InvariantKey, Rat>> out;
    try {
        for (const auto& e : field(j, "entries"))
            out.emplace_back(InvariantKey{ints(field(e, "beta"), "beta"), ints(field(e, "a"), "a"), ints(field(e, "b"), "b")},
                             rat_from_json(field(e, "value")));
    } catch (const json::exception& e) {
        throw StructuralError(std::string("store JSON: ") + e.what());
    }
    return out;
}

json report_to_json(const CheckReport& r) {
    json j{{"check", r.check}, {"status", r.passed ? "pass" : "fail"}, {"identities", r.identities}};
    if (r.first_failure)
        j["first_failure"] = {{"location", r.first_failure->location},
                              {"monomial", r.first_failure->monomial},
                              {"lhs", r.first_failure->lhs},
                              {"rhs", r.first_failure->rhs}};
    return j;
}

}  // namespace tqc
