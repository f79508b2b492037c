#include "tqc/potential.hpp"

#include "tqc/errors.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

namespace tqc {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

bool all_zero(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

/// Calls fn(sub) for every 0 <= sub <= bound, odometer order.
void for_each_below(const std::vector<int>& bound, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cur(bound.size(), 0);
    while (true) {
        fn(cur);
        std::size_t k = 0;
        while (k < cur.size() && cur[k] == bound[k]) cur[k++] = 0;
        if (k == cur.size()) return;
        ++cur[k];
    }
}

/// Calls fn(v) for every v of length n with sum(v) <= cap and v[k] = 0 for k < first.
void for_each_bounded(int n, int cap, int first, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cur(sz(n), 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == n) {
            fn(cur);
            return;
        }
        if (k < first) {
            rec(k + 1, left);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[sz(k)] = e;
            rec(k + 1, left - e);
        }
        cur[sz(k)] = 0;
    };
    rec(0, cap);
}

std::vector<int> minus(std::vector<int> a, const std::vector<int>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
}

Rat binomial_product(const std::vector<int>& n, const std::vector<int>& k) {
    Rat w(1);
    for (std::size_t i = 0; i < n.size(); ++i)
        if (k[i] != 0 && k[i] != n[i]) w *= binomial(n[i], k[i]);
    return w;
}

Rat factorial_product(const std::vector<int>& v) {
    Rat w(1);
    for (int e : v)
        if (e > 1) w *= factorial(e);
    return w;
}

/// v^m expanded in the basis: (multiplicities alpha, m!/alpha! prod v_k^alpha_k).
std::vector<std::pair<std::vector<int>, Rat>> power_terms(const ClassVec& v, int m) {
    std::vector<std::pair<std::vector<int>, Rat>> out;
    const int n = static_cast<int>(v.size());
    std::vector<int> alpha(sz(n), 0);
    std::function<void(int, int, Rat)> rec = [&](int k, int left, Rat c) {
        if (k == n) {
            if (left == 0) out.emplace_back(alpha, c * factorial(m));
            return;
        }
        if (v[sz(k)].is_zero()) {
            rec(k + 1, left, c);
            return;
        }
        Rat ck(1);
        for (int e = 0; e <= left; ++e) {
            alpha[sz(k)] = e;
            rec(k + 1, left - e, c * ck / factorial(e));
            ck *= v[sz(k)];
        }
        alpha[sz(k)] = 0;
    };
    rec(0, m, Rat(1));
    return out;
}

struct DepthGuard {
    static inline thread_local int depth = 0;
    explicit DepthGuard(std::atomic<int>& max_depth) {
        ++depth;
        int seen = max_depth.load();
        while (depth > seen && !max_depth.compare_exchange_weak(seen, depth)) {
        }
    }
    ~DepthGuard() { --depth; }
};

}  // namespace

int InvariantKey::marks() const { return total(a) + total(b); }

std::string InvariantKey::str() const { return "<beta=(" + join(beta) + ") a=(" + join(a) + ") b=(" + join(b) + ")>"; }

std::size_t InvariantKeyHash::operator()(const InvariantKey& k) const {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&](int v) { h = (h ^ static_cast<std::size_t>(v + 0x9e)) * 0x100000001b3ull; };
    for (int v : k.beta) mix(v);
    mix(-1);
    for (int v : k.a) mix(v);
    mix(-2);
    for (int v : k.b) mix(v);
    return h;
}

bool selection_balanced(const CohomologyModel& m, const InvariantKey& key) {
    int lhs = 0;
    for (int k = 0; k < m.rank; ++k) lhs += m.codim(k) * (key.a[sz(k)] + key.b[sz(k)]) + key.b[sz(k)];
    return lhs == vdim(m, key.beta, key.marks());
}

InvariantStore::InvariantStore(CohomologyModel model, ChoicePolicy policy)
    : model_(std::move(model)), policy_(policy) {
    for (int i = 0; i < model_.rank; ++i) basis_.push_back(basis_vec(model_, i));
    const std::vector<int> no_b(sz(model_.rank), 0);
    for (const auto& seed : model_.seeds) {
        InvariantKey k{seed.beta, seed.a, no_b};
        Rat factor(1);
        bool zero = false;
        while (true) {
            Reduction r = reduce(k);
            if (r.kind == Reduction::Kind::zero) {
                zero = true;
                break;
            }
            if (r.kind == Reduction::Kind::irreducible) break;
            factor *= r.factor;
            k = std::move(r.key);
        }
        if (zero || factor.is_zero()) {
            if (!seed.value.is_zero())
                throw DomainError("seed " + InvariantKey{seed.beta, seed.a, no_b}.str() +
                                  " is forced to vanish by the reductions but has a nonzero value");
            continue;
        }
        const Rat v = seed.value / factor;
        auto [it, fresh] = seeds_.emplace(k, v);
        if (!fresh && it->second != v) throw DomainError("seeds disagree on canonical key " + k.str());
    }
}

void InvariantStore::check_key(const InvariantKey& key) const {
    if (static_cast<int>(key.a.size()) != model_.rank || static_cast<int>(key.b.size()) != model_.rank)
        throw StructuralError("invariant key " + key.str() + " has multiplicity vectors of the wrong length");
    for (std::size_t k = 0; k < key.a.size(); ++k)
        if (key.a[k] < 0 || key.b[k] < 0) throw StructuralError("negative multiplicity in " + key.str());
    vdim(model_, key.beta, 0);  // validates beta
}

bool InvariantStore::is_canonical(const InvariantKey& key) const {
    if (key.a[0] != 0 || key.b[0] != 0) return false;
    for (int k = 0; k < model_.rank; ++k)
        if (model_.is_divisor(k) && key.a[sz(k)] > 0) return false;
    return true;
}

Reduction InvariantStore::reduce(const InvariantKey& key) const {
    check_key(key);
    Reduction r;
    if (!selection_balanced(model_, key) || key.a[0] > 0) return r;
    if (key.b[0] > 0) {
        r.kind = Reduction::Kind::scaled;
        r.factor = Rat(-2);
        r.key = key;
        --r.key.b[0];
        return r;
    }
    for (int k = 1; k < model_.rank; ++k)
        if (model_.is_divisor(k) && key.a[sz(k)] > 0) {
            r.kind = Reduction::Kind::scaled;
            r.factor = Rat(model_.divisor_degree(k, key.beta));
            r.key = key;
            --r.key.a[sz(k)];
            return r;
        }
    r.kind = Reduction::Kind::irreducible;
    r.key = key;
    return r;
}

Rat InvariantStore::value(const InvariantKey& key) {
    Rat factor(1);
    InvariantKey k = key;
    while (true) {
        Reduction r = reduce(k);
        switch (r.kind) {
        case Reduction::Kind::zero:
            return Rat(0);
        case Reduction::Kind::scaled:
            factor *= r.factor;
            if (factor.is_zero()) return Rat(0);
            k = std::move(r.key);
            break;
        case Reduction::Kind::irreducible:
            return factor * canonical_value(r.key);
        }
    }
}

Rat InvariantStore::primary(const InvariantKey& key) {
    check_key(key);
    if (!is_canonical(key) || !all_zero(key.b) || !selection_balanced(model_, key))
        throw StructuralError("primary: " + key.str() + " is not a canonical balanced primary key");
    return canonical_value(key);
}

Rat InvariantStore::descendant(const InvariantKey& key) {
    check_key(key);
    if (!is_canonical(key) || all_zero(key.b) || !selection_balanced(model_, key))
        throw StructuralError("descendant: " + key.str() + " is not a canonical balanced key with tangencies");
    return canonical_value(key);
}

void InvariantStore::insert(const InvariantKey& key, const Rat& v) {
    std::unique_lock lock(mutex_);
    memo_.emplace(key, v);
}

Rat InvariantStore::canonical_value(const InvariantKey& key) {
    {
        std::shared_lock lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            ++hits_;
            return it->second;
        }
    }
    DepthGuard guard(max_depth_);
    Rat v;
    if (auto s = seeds_.find(key); s != seeds_.end()) {
        v = s->second;
    } else if (all_zero(key.b)) {
        if (key.marks() < 3)
            throw UnsupportedKeyError("no seed and no reconstruction step reaches " + key.str() +
                                      ": fewer than three insertions");
        v = compute_primary(key);
    } else {
        v = compute_descendant(key);
    }
    ++computed_;
    insert(key, v);
    return v;
}

Rat InvariantStore::value_at(const std::vector<int>& beta, const std::vector<int>& a, const std::vector<int>& b) {
    return value(InvariantKey{beta, a, b});
}

Rat InvariantStore::expand(const std::vector<int>& beta, std::vector<int>& a, const std::vector<int>& b,
                           const std::vector<const ClassVec*>& extras, std::size_t pos) {
    if (pos == extras.size()) return value_at(beta, a, b);
    Rat sum(0);
    const ClassVec& v = *extras[pos];
    for (int k = 0; k < model_.rank; ++k) {
        if (v[sz(k)].is_zero()) continue;
        ++a[sz(k)];
        const Rat term = expand(beta, a, b, extras, pos + 1);
        --a[sz(k)];
        if (!term.is_zero()) sum.add_product(v[sz(k)], term);
    }
    return sum;
}

Rat InvariantStore::split_sum(const std::vector<int>& beta, const std::vector<int>& rest, const ClassVec& A,
                              const ClassVec& B, const ClassVec& C, const ClassVec& E) {
    const int n = model_.rank;
    const std::vector<int> no_b(sz(n), 0);
    Rat sum(0);
    for_each_below(beta, [&](const std::vector<int>& beta1) {
        if (all_zero(beta1) || beta1 == beta) return;
        const std::vector<int> beta2 = minus(beta, beta1);
        for_each_below(rest, [&](const std::vector<int>& r1) {
            std::vector<int> a1 = r1;
            std::vector<int> a2 = minus(rest, r1);
            std::vector<Rat> left(sz(n)), right(sz(n));
            bool any_left = false, any_right = false;
            for (int e = 0; e < n; ++e) {
                left[sz(e)] = expand(beta1, a1, no_b, {&A, &B, &basis_[sz(e)]}, 0);
                any_left = any_left || !left[sz(e)].is_zero();
            }
            if (!any_left) return;
            for (int f = 0; f < n; ++f) {
                right[sz(f)] = expand(beta2, a2, no_b, {&basis_[sz(f)], &C, &E}, 0);
                any_right = any_right || !right[sz(f)].is_zero();
            }
            if (!any_right) return;
            Rat inner(0);
            for (int e = 0; e < n; ++e) {
                if (left[sz(e)].is_zero()) continue;
                for (int f = 0; f < n; ++f)
                    if (!right[sz(f)].is_zero() && !model_.g_inv(e, f).is_zero())
                        inner.add_product(model_.g_inv(e, f), left[sz(e)] * right[sz(f)]);
            }
            sum.add_product(binomial_product(rest, r1), inner);
        });
    });
    return sum;
}

Rat InvariantStore::compute_primary(const InvariantKey& key) {
    const int n = model_.rank;
    const bool first = policy_ == ChoicePolicy::first;
    std::vector<int> order(sz(n));
    std::iota(order.begin(), order.end(), 0);
    if (!first) std::reverse(order.begin(), order.end());

    int t = -1;
    for (int k : order)
        if (key.a[sz(k)] > 0 && (t < 0 || model_.codim(k) < model_.codim(t))) t = k;

    int D = -1, p = -1;
    Rat kappa;
    for (int d : order) {
        if (!model_.is_divisor(d)) continue;
        for (int q : order) {
            const ClassVec c = cup_vec(model_, basis_[sz(d)], basis_[sz(q)]);
            int nonzero = 0;
            for (const auto& x : c) nonzero += x.is_zero() ? 0 : 1;
            if (nonzero == 1 && !c[sz(t)].is_zero()) {
                D = d;
                p = q;
                kappa = c[sz(t)];
                break;
            }
        }
        if (D >= 0) break;
    }
    if (D < 0)
        throw UnsupportedKeyError("no reconstruction step reaches " + key.str() + ": T_" + std::to_string(t) +
                                  " is not a multiple of a single divisor product");

    std::vector<int> rest = key.a;
    --rest[sz(t)];
    int l = -1;
    for (int k : order)
        if (rest[sz(k)] > 0 && (l < 0 || model_.codim(k) > model_.codim(l))) l = k;
    --rest[sz(l)];
    int kk = -1;
    for (int k : order)
        if (rest[sz(k)] > 0) {
            kk = k;
            break;
        }
    --rest[sz(kk)];

    const ClassVec& TD = basis_[sz(D)];
    const ClassVec& Tp = basis_[sz(p)];
    const ClassVec& Tk = basis_[sz(kk)];
    const ClassVec& Tl = basis_[sz(l)];
    const ClassVec Dl = cup_vec(model_, TD, Tl);
    const ClassVec pk = cup_vec(model_, Tp, Tk);
    const ClassVec kl = cup_vec(model_, Tk, Tl);
    const std::vector<int> no_b(sz(n), 0);
    const Rat Dbeta(model_.divisor_degree(D, key.beta));

    std::vector<int> a = rest;
    Rat s = expand(key.beta, a, no_b, {&Dl, &Tp, &Tk}, 0);
    if (!Dbeta.is_zero())
        s += Dbeta * (expand(key.beta, a, no_b, {&pk, &Tl}, 0) - expand(key.beta, a, no_b, {&Tp, &kl}, 0));
    s += split_sum(key.beta, rest, Tp, Tk, TD, Tl);
    s -= split_sum(key.beta, rest, TD, Tp, Tk, Tl);
    return s / kappa;
}

const std::vector<Rat>& InvariantStore::gamma_moment(const std::vector<int>& c) {
    {
        std::shared_lock lock(mutex_);
        auto it = moments_.find(c);
        if (it != moments_.end()) return it->second;
    }
    std::vector<Rat> mat;
    for (int e = 0; e < model_.rank; ++e)
        for (int f = 0; f < model_.rank; ++f) mat.push_back(gamma_upper_moment(model_, e, f, c));
    std::unique_lock lock(mutex_);
    return moments_.emplace(c, std::move(mat)).first->second;
}

Rat InvariantStore::compute_descendant(const InvariantKey& key) {
    const int n = model_.rank;
    const bool first = policy_ == ChoicePolicy::first;
    std::vector<int> order(sz(n));
    std::iota(order.begin(), order.end(), 0);
    if (!first) std::reverse(order.begin(), order.end());

    int i = -1, D = -1;
    for (int k : order)
        if (i < 0 && key.b[sz(k)] > 0) i = k;
    for (int k : order)
        if (D < 0 && model_.is_divisor(k) && model_.divisor_degree(k, key.beta) != 0) D = k;
    if (D < 0)
        throw UnsupportedKeyError("no recursion step reaches " + key.str() +
                                  ": every divisor has zero degree on the curve class");
    const Rat Dbeta(model_.divisor_degree(D, key.beta));

    std::vector<int> B = key.b;
    --B[sz(i)];
    const std::vector<int>& A = key.a;
    const ClassVec& Ti = basis_[sz(i)];
    const ClassVec& TD = basis_[sz(D)];
    const ClassVec DD = cup_vec(model_, TD, TD);
    const ClassVec TiD = cup_vec(model_, Ti, TD);

    std::vector<int> a = A;
    Rat s = expand(key.beta, a, B, {&Ti, &DD}, 0);
    s -= Rat(2) * expand(key.beta, a, B, {&TiD, &TD}, 0);

    const Rat b_fact = factorial_product(B);
    for_each_below(key.beta, [&](const std::vector<int>& beta1) {
        if (all_zero(beta1) || beta1 == key.beta) return;
        const std::vector<int> beta2 = minus(key.beta, beta1);
        for_each_below(A, [&](const std::vector<int>& a1c) {
            std::vector<int> a1 = a1c;
            std::vector<int> a2 = minus(A, a1c);
            const Rat wa = binomial_product(A, a1c);
            for_each_below(B, [&](const std::vector<int>& b1) {
                std::vector<Rat> left(sz(n));
                bool any_left = false;
                for (int e = 0; e < n; ++e) {
                    left[sz(e)] = expand(beta1, a1, b1, {&Ti, &basis_[sz(e)]}, 0);
                    any_left = any_left || !left[sz(e)].is_zero();
                }
                if (!any_left) return;
                const std::vector<int> rest = minus(B, b1);
                for_each_below(rest, [&](const std::vector<int>& c) {
                    const std::vector<int> b2 = minus(rest, c);
                    const std::vector<Rat>& M = gamma_moment(c);
                    std::vector<Rat> right(sz(n));
                    bool any_right = false;
                    for (int f = 0; f < n; ++f) {
                        right[sz(f)] = expand(beta2, a2, b2, {&basis_[sz(f)], &TD, &TD}, 0);
                        any_right = any_right || !right[sz(f)].is_zero();
                    }
                    if (!any_right) return;
                    Rat inner(0);
                    for (int e = 0; e < n; ++e) {
                        if (left[sz(e)].is_zero()) continue;
                        for (int f = 0; f < n; ++f) {
                            const Rat& mef = M[sz(e * n + f)];
                            if (!mef.is_zero() && !right[sz(f)].is_zero())
                                inner.add_product(mef, left[sz(e)] * right[sz(f)]);
                        }
                    }
                    if (inner.is_zero()) return;
                    const Rat w = wa * b_fact / (factorial_product(b1) * factorial_product(c) * factorial_product(b2));
                    s.add_product(w, inner);
                });
            });
        });
    });
    return s / (Dbeta * Dbeta);
}

StoreStats InvariantStore::stats() const {
    std::shared_lock lock(mutex_);
    return {memo_.size(), hits_.load(), computed_.load(), max_depth_.load()};
}

std::vector<std::pair<InvariantKey, Rat>> InvariantStore::entries() const {
    std::vector<std::pair<InvariantKey, Rat>> out;
    {
        std::shared_lock lock(mutex_);
        out.assign(memo_.begin(), memo_.end());
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

void InvariantStore::import_entries(const std::vector<std::pair<InvariantKey, Rat>>& entries) {
    for (const auto& [key, v] : entries) {
        check_key(key);
        if (!is_canonical(key) || !selection_balanced(model_, key))
            throw StructuralError("store entry " + key.str() + " is not a canonical balanced key");
        if (auto s = seeds_.find(key); s != seeds_.end() && s->second != v)
            throw VerificationError("store entry " + key.str() + " disagrees with a seed of the model");
        std::unique_lock lock(mutex_);
        auto [it, fresh] = memo_.emplace(key, v);
        if (!fresh && it->second != v)
            throw VerificationError("store entry " + key.str() + " disagrees with the value already known");
    }
}

std::vector<std::vector<int>> effective_classes(const CohomologyModel& m, int q_cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> bound(sz(m.lattice_rank));
    for (int l = 0; l < m.lattice_rank; ++l) bound[sz(l)] = q_cap / m.q_weights[sz(l)];
    auto weight = [&](const std::vector<int>& beta) {
        int w = 0;
        for (int l = 0; l < m.lattice_rank; ++l) w += m.q_weights[sz(l)] * beta[sz(l)];
        return w;
    };
    for_each_below(bound, [&](const std::vector<int>& beta) {
        if (!all_zero(beta) && weight(beta) <= q_cap) out.push_back(beta);
    });
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        const int wx = weight(x), wy = weight(y);
        return wx != wy ? wx < wy : x < y;
    });
    return out;
}

Series assemble_gamma(InvariantStore& store, const TruncSpec& trunc) {
    const CohomologyModel& m = store.model();
    const VarSpace space = m.space();
    SeriesBuilder out(space, trunc);
    for (const auto& beta : effective_classes(m, trunc.q)) {
        Mono qpart;
        for (int l = 0; l < m.lattice_rank; ++l) qpart.set(space.lane(qv(l)), beta[sz(l)]);
        // x_0 never appears: the unit insertion kills every invariant.
        for_each_bounded(m.rank, trunc.x, 1, [&](const std::vector<int>& a) {
            for_each_bounded(m.rank, trunc.y, 0, [&](const std::vector<int>& b) {
                InvariantKey key{beta, a, b};
                if (!selection_balanced(m, key)) return;
                const Rat v = store.value(key);
                if (v.is_zero()) return;
                Mono mono = qpart;
                for (int k = 0; k < m.rank; ++k) {
                    mono.set(space.lane(xv(k)), a[sz(k)]);
                    mono.set(space.lane(yv(k)), b[sz(k)]);
                }
                out.add(mono, v / (factorial_product(a) * factorial_product(b)));
            });
        });
    }
    return std::move(out).build();
}

Series classical_potential(const CohomologyModel& m, const DeformedMetric& met) {
    const VarSpace space = m.space();
    const TruncSpec trunc = met.trunc();
    SeriesBuilder out(space, trunc);
    for (int i = 0; i < m.rank; ++i)
        for (int j = 0; j < m.rank; ++j)
            for (int k = 0; k < m.rank; ++k) {
                const Series cubic = Series::monomial(space, trunc, make_mono(space, {{xv(i), 1}}), Rat(1)) *
                                     Series::monomial(space, trunc, make_mono(space, {{xv(j), 1}}), Rat(1)) *
                                     Series::monomial(space, trunc, make_mono(space, {{xv(k), 1}}), Rat(1));
                out.add(mul(cubic, met.gamma3(i, j, k)), Rat(1, 6));
            }
    return std::move(out).build();
}

PotentialSeries full_potential(InvariantStore& store, const DeformedMetric& met) {
    PotentialSeries p;
    p.gamma_pot = assemble_gamma(store, met.trunc());
    p.classical = classical_potential(store.model(), met);
    p.full = p.classical + p.gamma_pot;
    return p;
}

Series x_third(const Series& s, int i, int j, int k) { return deriv(deriv(deriv(s, xv(i)), xv(j)), xv(k)); }

bool charnum_balanced(const CohomologyModel& m, const std::vector<int>& beta, int points, int tangents) {
    if (points < 0 || tangents < 0) return false;
    return points * m.dim + 2 * tangents == vdim(m, beta, points + tangents);
}

Rat characteristic_number(InvariantStore& store, const std::vector<int>& beta, int points, int tangents) {
    const CohomologyModel& m = store.model();
    if (!charnum_balanced(m, beta, points, tangents))
        throw DimensionError("conditions do not balance: " + std::to_string(points) + " points and " +
                             std::to_string(tangents) + " tangencies against vdim " +
                             std::to_string(vdim(m, beta, points + tangents)));
    const int pt = m.point_index();
    if (pt < 0) throw StructuralError("characteristic_number: model has no point class");
    if (static_cast<int>(m.hyperplane.size()) != m.rank)
        throw StructuralError("characteristic_number: model has no hyperplane class");
    const ClassVec& z = m.hyperplane;
    const ClassVec zz = cup_vec(m, z, z);

    Rat total_value(0);
    for (int s = 0; s <= tangents; ++s) {
        Rat term(0);
        for (const auto& [alpha, ca] : power_terms(zz, s))
            for (const auto& [gamma, cg] : power_terms(z, tangents - s)) {
                std::vector<int> a = alpha;
                a[sz(pt)] += points;
                const Rat v = store.value(InvariantKey{beta, a, gamma});
                if (!v.is_zero()) term.add_product(ca * cg, v);
            }
        total_value.add_product(binomial(tangents, s), term);
    }
    return total_value;
}

std::vector<CharNumRow> characteristic_row(InvariantStore& store, const std::vector<int>& beta) {
    const CohomologyModel& m = store.model();
    if (m.dim < 2) throw DimensionError("the row is infinite on a curve target; give the points and tangencies");
    const int budget = m.dim + m.c1_degree(beta) - 3;
    std::vector<CharNumRow> rows;
    for (int points = budget / (m.dim - 1); points >= 0; --points) {
        const int tangents = budget - points * (m.dim - 1);
        if (tangents < 0 || !charnum_balanced(m, beta, points, tangents)) continue;
        rows.push_back({beta, points, tangents, characteristic_number(store, beta, points, tangents)});
    }
    return rows;
}

Rat degree_zero_formula(const CohomologyModel& m, int i, int j, int k, const std::vector<int>& b) {
    if (static_cast<int>(b.size()) != m.rank) throw StructuralError("degree_zero_formula: b has the wrong length");
    ClassVec v = cup_vec(m, cup_vec(m, basis_vec(m, i), basis_vec(m, j)), basis_vec(m, k));
    for (int l = 0; l < m.rank; ++l) {
        ClassVec t = basis_vec(m, l);
        for (auto& c : t) c *= Rat(-2);
        for (int r = 0; r < b[sz(l)]; ++r) v = cup_vec(m, v, t);
    }
    return trace(m, v);
}

}  // namespace tqc
