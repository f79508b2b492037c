#pragma once

// The invariant engine.  Values of first enumerative descendants
// <tau0(T)^a tau1(T)^b>_beta are computed one coefficient at a time:
// string, dilaton and divisor reductions bring a key to canonical form,
// primaries are reconstructed from WDVV at y = 0, keys with tangencies are
// lowered by the topological recursion.  Everything is memoized.

#include "tqc/metric.hpp"
#include "tqc/rat.hpp"
#include "tqc/series.hpp"
#include "tqc/variety.hpp"

#include <atomic>
#include <cstddef>
#include <map>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tqc {

/// Label of one invariant: the curve class and the multiplicities of tau0
/// and tau1 insertions per basis element.
struct InvariantKey {
    std::vector<int> beta;
    std::vector<int> a;
    std::vector<int> b;

    int marks() const;
    std::string str() const;

    friend bool operator==(const InvariantKey&, const InvariantKey&) = default;
    friend auto operator<=>(const InvariantKey&, const InvariantKey&) = default;
};

struct InvariantKeyHash {
    std::size_t operator()(const InvariantKey& k) const;
};

/// Codimension count of the insertions against vdim.
bool selection_balanced(const CohomologyModel& m, const InvariantKey& key);

struct Reduction {
    enum class Kind { zero, scaled, irreducible };
    Kind kind = Kind::zero;
    Rat factor;        ///< for `scaled`
    InvariantKey key;  ///< smaller key for `scaled`, the key itself for `irreducible`
};

/// Which of several equally valid recursion choices the engine makes.  Both
/// policies must produce the same values; the second exists to test that.
enum class ChoicePolicy { first, last };

struct StoreStats {
    std::size_t entries = 0;
    std::size_t hits = 0;
    std::size_t computed = 0;
    int max_depth = 0;
};

class InvariantStore {
public:
    /// DomainError if a seed is inconsistent with the reductions.
    explicit InvariantStore(CohomologyModel model, ChoicePolicy policy = ChoicePolicy::first);

    InvariantStore(const InvariantStore&) = delete;
    InvariantStore& operator=(const InvariantStore&) = delete;

    const CohomologyModel& model() const { return model_; }
    ChoicePolicy policy() const { return policy_; }

    /// One reduction step.  DomainError for beta = 0 or ineffective beta.
    Reduction reduce(const InvariantKey& key) const;

    /// Value of any key with beta != 0.
    Rat value(const InvariantKey& key);
    /// Canonical, balanced key without tangencies.
    Rat primary(const InvariantKey& key);
    /// Canonical, balanced key with at least one tangency.
    Rat descendant(const InvariantKey& key);

    StoreStats stats() const;
    /// Canonical entries in key order.
    std::vector<std::pair<InvariantKey, Rat>> entries() const;
    /// Warm start.  Entries must be canonical; an entry that disagrees with a
    /// value already present is a VerificationError.
    void import_entries(const std::vector<std::pair<InvariantKey, Rat>>& entries);

private:
    Rat canonical_value(const InvariantKey& key);
    Rat compute_primary(const InvariantKey& key);
    Rat compute_descendant(const InvariantKey& key);
    Rat value_at(const std::vector<int>& beta, const std::vector<int>& a, const std::vector<int>& b);
    Rat expand(const std::vector<int>& beta, std::vector<int>& a, const std::vector<int>& b,
               const std::vector<const ClassVec*>& extras, std::size_t pos);
    Rat split_sum(const std::vector<int>& beta, const std::vector<int>& rest, const ClassVec& A,
                  const ClassVec& B, const ClassVec& C, const ClassVec& E);
    const std::vector<Rat>& gamma_moment(const std::vector<int>& c);
    void check_key(const InvariantKey& key) const;
    bool is_canonical(const InvariantKey& key) const;
    void insert(const InvariantKey& key, const Rat& v);

    CohomologyModel model_;
    ChoicePolicy policy_;
    std::vector<ClassVec> basis_;
    std::map<InvariantKey, Rat> seeds_;

    mutable std::shared_mutex mutex_;
    std::unordered_map<InvariantKey, Rat, InvariantKeyHash> memo_;
    std::map<std::vector<int>, std::vector<Rat>> moments_;
    std::atomic<std::size_t> hits_{0};
    std::atomic<std::size_t> computed_{0};
    std::atomic<int> max_depth_{0};
};

/// Effective classes 0 < beta with weighted degree at most `q_cap`, in
/// increasing degree, then lexicographic order.
std::vector<std::vector<int>> effective_classes(const CohomologyModel& m, int q_cap);

/// Gamma = sum q^beta y^b/b! x^a/a! <tau0^a tau1^b>_beta over the truncation.
Series assemble_gamma(InvariantStore& store, const TruncSpec& trunc);

/// Phi0 = sum_ijk x_i x_j x_k / 6 gamma_ijk at the truncation of `met`.
Series classical_potential(const CohomologyModel& m, const DeformedMetric& met);

struct PotentialSeries {
    Series gamma_pot;
    Series classical;
    Series full;
};

/// Gamma, Phi0 and their sum at the truncation of `met`.
PotentialSeries full_potential(InvariantStore& store, const DeformedMetric& met);

/// d^3 s / dx_i dx_j dx_k.
Series x_third(const Series& s, int i, int j, int k);

struct CharNumRow {
    std::vector<int> beta;
    int points = 0;
    int tangents = 0;
    Rat value;
};

/// a * dimX + 2b = vdim(beta, a + b).
bool charnum_balanced(const CohomologyModel& m, const std::vector<int>& beta, int points, int tangents);

/// Curves of class beta through `points` general points and tangent to
/// `tangents` general members of the hyperplane class.  DimensionError when
/// the conditions do not balance.
Rat characteristic_number(InvariantStore& store, const std::vector<int>& beta, int points, int tangents);

/// All balanced (points, tangents) for beta, points descending.
/// DimensionError on curve targets, where the row is infinite.
std::vector<CharNumRow> characteristic_row(InvariantStore& store, const std::vector<int>& beta);

/// tr(prod_l (-2 T_l)^{b_l} T_i T_j T_k): the normalized degree-zero value of
/// <tau1^b tau0(T_i) tau0(T_j) tau0(T_k)>_0.
Rat degree_zero_formula(const CohomologyModel& m, int i, int j, int k, const std::vector<int>& b);

}  // namespace tqc
