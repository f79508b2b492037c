#include "tqc/series.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace tqc {

const char* group_name(Group g) {
    switch (g) {
        case Group::q: return "q";
        case Group::x: return "x";
        case Group::y: return "y";
    }
    return "?";
}

VarSpace::VarSpace(int q_vars, int basis, std::vector<int> q_weights) {
    if (q_vars < 0 || basis < 0 || q_vars + 2 * basis > kMaxVars)
        throw StructuralError("VarSpace: " + std::to_string(q_vars) + " q-variables and " +
                              std::to_string(basis) + " basis elements exceed " +
                              std::to_string(kMaxVars) + " lanes");
    if (!q_weights.empty() && static_cast<int>(q_weights.size()) != q_vars)
        throw StructuralError("VarSpace: q_weights length does not match q_vars");
    q_ = static_cast<std::uint8_t>(q_vars);
    n_ = static_cast<std::uint8_t>(basis);
    for (int i = 0; i < q_vars; ++i) {
        int w = q_weights.empty() ? 1 : q_weights[static_cast<std::size_t>(i)];
        if (w < 1 || w > kMaxCap) throw StructuralError("VarSpace: q weight must be in [1, 127]");
        w_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(w);
    }
}

int VarSpace::offset(Group g) const {
    switch (g) {
        case Group::q: return 0;
        case Group::x: return q_;
        case Group::y: return q_ + n_;
    }
    return 0;
}

std::vector<int> VarSpace::q_weights() const {
    std::vector<int> out;
    for (int i = 0; i < q_; ++i) out.push_back(w_[static_cast<std::size_t>(i)]);
    return out;
}

int VarSpace::lane(Var v) const {
    if (v.index < 0 || v.index >= size(v.group))
        throw StructuralError(std::string("undeclared variable ") + group_name(v.group) +
                              std::to_string(v.index));
    return offset(v.group) + v.index;
}

Var VarSpace::var_of_lane(int lane) const {
    if (lane < q_) return {Group::q, lane};
    if (lane < q_ + n_) return {Group::x, lane - q_};
    return {Group::y, lane - q_ - n_};
}

std::string VarSpace::var_name(Var v) const {
    if (v.group == Group::q && q_ == 1) return "q";
    return group_name(v.group) + std::to_string(v.index);
}

TruncSpec meet(const TruncSpec& a, const TruncSpec& b) {
    return {std::min(a.q, b.q), std::min(a.x, b.x), std::min(a.y, b.y)};
}

bool within(const TruncSpec& inner, const TruncSpec& outer) {
    return inner.q <= outer.q && inner.x <= outer.x && inner.y <= outer.y;
}

void Mono::set(int lane, int exponent) {
    if (lane < 0 || lane >= kMaxVars) throw StructuralError("Mono: lane out of range");
    if (exponent < 0 || exponent > 255) throw StructuralError("Mono: exponent out of range");
    std::uint64_t& w = lane < 8 ? lo_ : hi_;
    const int shift = 8 * (lane & 7);
    w &= ~(std::uint64_t{0xFF} << shift);
    w |= std::uint64_t(static_cast<unsigned>(exponent)) << shift;
}

Degrees degrees(const VarSpace& space, const Mono& m) {
    Degrees d;
    int lane = 0;
    for (int i = 0; i < space.q_vars(); ++i, ++lane) d.q += space.q_weight(i) * m[lane];
    for (int i = 0; i < space.basis(); ++i, ++lane) d.x += m[lane];
    for (int i = 0; i < space.basis(); ++i, ++lane) d.y += m[lane];
    return d;
}

bool in_range(const VarSpace& space, const TruncSpec& trunc, const Mono& m) {
    for (int lane = space.lanes(); lane < kMaxVars; ++lane)
        if (m[lane] != 0) return false;
    const Degrees d = degrees(space, m);
    return d.q <= trunc.q && d.x <= trunc.x && d.y <= trunc.y;
}

bool canonical_less(const VarSpace& space, const Mono& a, const Mono& b) {
    for (Group g : {Group::q, Group::x, Group::y}) {
        const int off = space.offset(g);
        const int n = space.size(g);
        int da = 0;
        int db = 0;
        for (int i = 0; i < n; ++i) {
            const int w = g == Group::q ? space.q_weight(i) : 1;
            da += w * a[off + i];
            db += w * b[off + i];
        }
        if (da != db) return da < db;
        for (int i = 0; i < n; ++i)
            if (a[off + i] != b[off + i]) return a[off + i] > b[off + i];
    }
    return false;
}

Mono make_mono(const VarSpace& space, std::initializer_list<std::pair<Var, int>> powers) {
    Mono m;
    for (const auto& [v, e] : powers) {
        const int lane = space.lane(v);
        m.set(lane, m[lane] + e);
    }
    return m;
}

std::string mono_string(const VarSpace& space, const Mono& m) {
    std::string out;
    for (int lane = 0; lane < space.lanes(); ++lane) {
        const int e = m[lane];
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += space.var_name(space.var_of_lane(lane));
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

namespace {

void check_caps(const TruncSpec& t) {
    if (t.q < 0 || t.x < 0 || t.y < 0 || t.q > kMaxCap || t.x > kMaxCap || t.y > kMaxCap)
        throw StructuralError("TruncSpec: caps must lie in [0, 127]");
}

void require_same_space(const Series& a, const Series& b, const char* op) {
    if (!(a.space() == b.space()))
        throw StructuralError(std::string(op) + ": operands live in different variable spaces");
}

std::vector<Series::Term> sorted_terms(const VarSpace& space, std::vector<Series::Term> terms) {
    std::sort(terms.begin(), terms.end(), [&space](const Series::Term& a, const Series::Term& b) {
        return canonical_less(space, a.mono, b.mono);
    });
    return terms;
}

}  // namespace

Series::Series(VarSpace space, TruncSpec trunc) : space_(space), trunc_(trunc) { check_caps(trunc_); }

Series Series::constant(VarSpace space, TruncSpec trunc, const Rat& c) {
    return monomial(space, trunc, Mono{}, c);
}

Series Series::variable(VarSpace space, TruncSpec trunc, Var v, const Rat& c) {
    Mono m;
    m.set(space.lane(v), 1);
    return monomial(space, trunc, m, c);
}

Series Series::monomial(VarSpace space, TruncSpec trunc, const Mono& m, const Rat& c) {
    Series s(space, trunc);
    if (!c.is_zero() && in_range(space, trunc, m)) s.terms_.push_back({m, c});
    return s;
}

Series Series::adopt_sorted(VarSpace space, TruncSpec trunc, std::vector<Term> terms) {
    Series s(space, trunc);
    s.terms_ = std::move(terms);
    return s;
}

Series Series::from_terms(VarSpace space, TruncSpec trunc, std::vector<Term> terms) {
    SeriesBuilder b(space, trunc);
    for (auto& t : terms) b.add(t.mono, t.coeff);
    return std::move(b).build();
}

Rat Series::coeff(const Mono& m) const {
    if (!in_range(space_, trunc_, m))
        throw RangeError("coeff: monomial " + mono_string(space_, m) + " lies beyond the truncation");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [this](const Term& t, const Mono& key) {
        return canonical_less(space_, t.mono, key);
    });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return Rat(0);
}

Rat Series::constant_term() const {
    if (!terms_.empty() && terms_.front().mono.is_one()) return terms_.front().coeff;
    return Rat(0);
}

Series Series::truncated(const TruncSpec& caps) const { return with_trunc(meet(trunc_, caps)); }

Series Series::with_trunc(const TruncSpec& caps) const {
    Series out(space_, caps);
    for (const auto& t : terms_)
        if (in_range(space_, caps, t.mono)) out.terms_.push_back(t);
    return out;
}

Series& Series::operator+=(const Series& o) { return *this = add(*this, o); }
Series& Series::operator-=(const Series& o) { return *this = add(*this, -o); }

Series& Series::operator*=(const Rat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Series operator+(const Series& a, const Series& b) { return add(a, b); }
Series operator-(const Series& a, const Series& b) { return add(a, -b); }
Series operator*(const Series& a, const Series& b) { return mul(a, b); }

bool operator==(const Series& a, const Series& b) {
    if (!(a.space_ == b.space_) || !(a.trunc_ == b.trunc_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

std::string Series::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rat c = t.coeff;
        if (first) {
            if (c.sign() < 0) {
                os << '-';
                c = -c;
            }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        first = false;
        if (t.mono.is_one()) {
            os << c.pretty();
        } else {
            if (c != Rat(1)) os << c.pretty() << '*';
            os << mono_string(space_, t.mono);
        }
    }
    return os.str();
}

SeriesBuilder::SeriesBuilder(VarSpace space, TruncSpec trunc) : space_(space), trunc_(trunc) { check_caps(trunc_); }

void SeriesBuilder::add(const Mono& m, const Rat& c) {
    if (c.is_zero() || !in_range(space_, trunc_, m)) return;
    acc_[m] += c;
}

void SeriesBuilder::add_product(const Mono& m, const Rat& a, const Rat& b) {
    if (a.is_zero() || b.is_zero() || !in_range(space_, trunc_, m)) return;
    acc_[m].add_product(a, b);
}

void SeriesBuilder::add(const Series& s, const Rat& scale) {
    if (!(s.space() == space_)) throw StructuralError("SeriesBuilder: variable space mismatch");
    if (scale.is_zero()) return;
    for (const auto& t : s.terms()) {
        if (!in_range(space_, trunc_, t.mono)) continue;
        if (scale == Rat(1))
            acc_[t.mono] += t.coeff;
        else
            acc_[t.mono].add_product(t.coeff, scale);
    }
}

Series SeriesBuilder::build() && {
    Series out(space_, trunc_);
    out.terms_.reserve(acc_.size());
    for (auto& [m, c] : acc_)
        if (!c.is_zero()) out.terms_.push_back({m, std::move(c)});
    out.terms_ = sorted_terms(space_, std::move(out.terms_));
    acc_.clear();
    return out;
}

Series add(const Series& s, const Series& t) {
    require_same_space(s, t, "add");
    const TruncSpec trunc = meet(s.trunc(), t.trunc());
    const VarSpace& space = s.space();
    std::vector<Series::Term> out;
    out.reserve(s.size() + t.size());
    auto a = s.terms().begin();
    auto b = t.terms().begin();
    const auto ae = s.terms().end();
    const auto be = t.terms().end();
    auto push = [&](const Mono& m, Rat c) {
        if (!c.is_zero() && in_range(space, trunc, m)) out.push_back({m, std::move(c)});
    };
    while (a != ae || b != be) {
        if (b == be || (a != ae && canonical_less(space, a->mono, b->mono))) {
            push(a->mono, a->coeff);
            ++a;
        } else if (a == ae || canonical_less(space, b->mono, a->mono)) {
            push(b->mono, b->coeff);
            ++b;
        } else {
            push(a->mono, a->coeff + b->coeff);
            ++a;
            ++b;
        }
    }
    return Series::adopt_sorted(space, trunc, std::move(out));
}

Series mul(const Series& s, const Series& t) {
    require_same_space(s, t, "mul");
    const TruncSpec trunc = meet(s.trunc(), t.trunc());
    const VarSpace& space = s.space();
    if (s.is_zero() || t.is_zero()) return Series(space, trunc);

    // Bucket the right operand by degree so that whole buckets beyond the
    // caps are skipped.
    struct Bucket {
        Degrees deg;
        std::vector<const Series::Term*> terms;
    };
    std::map<std::tuple<int, int, int>, std::size_t> index;
    std::vector<Bucket> buckets;
    for (const auto& term : t.terms()) {
        const Degrees d = degrees(space, term.mono);
        auto key = std::make_tuple(d.q, d.x, d.y);
        auto [it, fresh] = index.try_emplace(key, buckets.size());
        if (fresh) buckets.push_back({d, {}});
        buckets[it->second].terms.push_back(&term);
    }

    std::unordered_map<Mono, Rat, MonoHash> acc;
    acc.reserve(s.size() + t.size());
    for (const auto& ta : s.terms()) {
        const Degrees da = degrees(space, ta.mono);
        for (const auto& bucket : buckets) {
            if (da.q + bucket.deg.q > trunc.q || da.x + bucket.deg.x > trunc.x || da.y + bucket.deg.y > trunc.y)
                continue;
            for (const auto* tb : bucket.terms) acc[ta.mono + tb->mono].add_product(ta.coeff, tb->coeff);
        }
    }
    std::vector<Series::Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.push_back({m, std::move(c)});
    return Series::adopt_sorted(space, trunc, sorted_terms(space, std::move(out)));
}

Series deriv(const Series& s, Var v) {
    const int lane = s.space().lane(v);
    std::vector<Series::Term> out;
    for (const auto& t : s.terms()) {
        const int e = t.mono[lane];
        if (e == 0) continue;
        Mono m = t.mono;
        m.set(lane, e - 1);
        out.push_back({m, t.coeff * Rat(e)});
    }
    return Series::from_terms(s.space(), s.trunc(), std::move(out));
}

Series exp_series(const Series& s) {
    if (!s.constant_term().is_zero()) throw DomainError("exp_series: argument has a nonzero constant term");
    Series result = Series::constant(s.space(), s.trunc(), Rat(1));
    Series power = result;
    for (int n = 1; !power.is_zero(); ++n) {
        power = mul(power, s) * Rat(1, n);
        result += power;
    }
    return result;
}

Series set_zero(const Series& s, std::span<const Var> vars) {
    std::vector<int> lanes;
    for (const Var& v : vars) lanes.push_back(s.space().lane(v));
    std::vector<Series::Term> out;
    for (const auto& t : s.terms()) {
        bool keep = true;
        for (int lane : lanes)
            if (t.mono[lane] != 0) {
                keep = false;
                break;
            }
        if (keep) out.push_back(t);
    }
    return Series::from_terms(s.space(), s.trunc(), std::move(out));
}

Series set_zero(const Series& s, std::initializer_list<Var> vars) {
    return set_zero(s, std::span<const Var>(vars.begin(), vars.size()));
}

Series set_zero_group(const Series& s, Group g) {
    std::vector<Var> vars;
    for (int i = 0; i < s.space().size(g); ++i) vars.push_back({g, i});
    return set_zero(s, vars);
}

Series scale_group(const Series& s, Group g, const Rat& c) {
    const int off = s.space().offset(g);
    const int n = s.space().size(g);
    std::vector<Series::Term> out;
    for (const auto& t : s.terms()) {
        int d = 0;
        for (int i = 0; i < n; ++i) d += t.mono[off + i];
        out.push_back({t.mono, t.coeff * pow(c, d)});
    }
    return Series::from_terms(s.space(), s.trunc(), std::move(out));
}

SeriesMatrix::SeriesMatrix(int dim, VarSpace space, TruncSpec trunc)
    : dim_(dim), space_(space), trunc_(trunc),
      entries_(static_cast<std::size_t>(dim * dim), Series(space, trunc)) {}

SeriesMatrix SeriesMatrix::identity(int dim, VarSpace space, TruncSpec trunc) {
    SeriesMatrix m(dim, space, trunc);
    for (int i = 0; i < dim; ++i) m(i, i) = Series::constant(space, trunc, Rat(1));
    return m;
}

SeriesMatrix SeriesMatrix::transposed() const {
    SeriesMatrix t(dim_, space_, trunc_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

SeriesMatrix SeriesMatrix::truncated(const TruncSpec& caps) const {
    SeriesMatrix t(dim_, space_, meet(trunc_, caps));
    for (std::size_t k = 0; k < entries_.size(); ++k) t.entries_[k] = entries_[k].truncated(caps);
    return t;
}

namespace {

void require_compatible(const SeriesMatrix& a, const SeriesMatrix& b, const char* op) {
    if (a.dim() != b.dim()) throw StructuralError(std::string(op) + ": matrix dimensions differ");
    if (!(a.space() == b.space())) throw StructuralError(std::string(op) + ": variable spaces differ");
}

}  // namespace

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
    require_compatible(a, b, "matrix mul");
    const TruncSpec trunc = meet(a.trunc(), b.trunc());
    SeriesMatrix out(a.dim(), a.space(), trunc);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            Series acc(a.space(), trunc);
            for (int k = 0; k < a.dim(); ++k) acc += mul(a(i, k), b(k, j));
            out(i, j) = std::move(acc);
        }
    return out;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
    require_compatible(a, b, "matrix add");
    SeriesMatrix out(a.dim(), a.space(), meet(a.trunc(), b.trunc()));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
    require_compatible(a, b, "matrix sub");
    SeriesMatrix out(a.dim(), a.space(), meet(a.trunc(), b.trunc()));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
        if (!(a.entries_[k] == b.entries_[k])) return false;
    return true;
}

RatMatrix invert(const RatMatrix& m) {
    const std::size_t n = m.size();
    RatMatrix a = m;
    RatMatrix inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw StructuralError("invert: matrix is not square");
        inv[i][i] = Rat(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw DomainError("invert: singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Rat scale = Rat(1) / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const Rat f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

SeriesMatrix matrix_invert(const SeriesMatrix& m) {
    const int n = m.dim();
    RatMatrix c(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j).constant_term();
    RatMatrix c_inv;
    try {
        c_inv = invert(c);
    } catch (const DomainError&) {
        throw DomainError("matrix_invert: constant term is singular");
    }
    SeriesMatrix inv(n, m.space(), m.trunc());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv(i, j) = Series::constant(m.space(), m.trunc(), c_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);

    const SeriesMatrix id = SeriesMatrix::identity(n, m.space(), m.trunc());
    // Each step doubles the order of the residual; the bound is generous.
    for (int iter = 0; iter < 64; ++iter) {
        const SeriesMatrix residual = id - m * inv;
        bool done = true;
        for (int i = 0; i < n && done; ++i)
            for (int j = 0; j < n; ++j)
                if (!residual(i, j).is_zero()) {
                    done = false;
                    break;
                }
        if (done) return inv;
        inv = inv + inv * residual;
    }
    throw DomainError("matrix_invert: Newton iteration did not converge");
}

}  // namespace tqc
