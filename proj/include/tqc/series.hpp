#pragma once

// Truncated multivariate formal power series over exact rationals.
//
// Variables come in three groups: q (curve-class lattice coordinates, each
// with a positive weight), x and y (one per cohomology basis element).  A
// monomial is in range for a TruncSpec when its weighted q-degree, total
// x-degree and total y-degree are all within the caps.  Every operation
// truncates eagerly, so a Series never stores an out-of-range term.
//
// Terms are kept sorted in canonical order: graded lexicographic on the
// q block, then the x block, then the y block.  Each block compares first by
// its (weighted) degree and then by exponents, lowest variable index first.

#include "tqc/errors.hpp"
#include "tqc/rat.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tqc {

inline constexpr int kMaxVars = 16;
inline constexpr int kMaxCap = 127;

enum class Group : std::uint8_t { q = 0, x = 1, y = 2 };

const char* group_name(Group g);

struct Var {
    Group group;
    int index;
};

inline Var qv(int i) { return {Group::q, i}; }
inline Var xv(int i) { return {Group::x, i}; }
inline Var yv(int i) { return {Group::y, i}; }

class VarSpace {
public:
    VarSpace() = default;
    /// `basis` is the number of x variables and also of y variables.  Empty
    /// `q_weights` means weight one for every q variable.
    VarSpace(int q_vars, int basis, std::vector<int> q_weights = {});

    int q_vars() const { return q_; }
    int basis() const { return n_; }
    int size(Group g) const { return g == Group::q ? q_ : n_; }
    int lanes() const { return q_ + 2 * n_; }
    int offset(Group g) const;
    int q_weight(int i) const { return w_[static_cast<std::size_t>(i)]; }
    std::vector<int> q_weights() const;

    /// Storage lane of a variable; throws StructuralError if undeclared.
    int lane(Var v) const;
    Var var_of_lane(int lane) const;
    std::string var_name(Var v) const;

    friend bool operator==(const VarSpace& a, const VarSpace& b) {
        return a.q_ == b.q_ && a.n_ == b.n_ && a.w_ == b.w_;
    }

private:
    std::uint8_t q_ = 0;
    std::uint8_t n_ = 0;
    std::array<std::uint8_t, kMaxVars> w_{};
};

struct TruncSpec {
    int q = 0;  ///< weighted total q-degree cap
    int x = 0;  ///< total x-degree cap
    int y = 0;  ///< total y-degree cap

    friend bool operator==(const TruncSpec&, const TruncSpec&) = default;
};

/// Componentwise minimum of the caps.
TruncSpec meet(const TruncSpec& a, const TruncSpec& b);
/// True when every cap of `inner` is at most the corresponding cap of `outer`.
bool within(const TruncSpec& inner, const TruncSpec& outer);

/// Exponent vector packed one byte per lane.  Adding two in-range monomials
/// never carries between lanes because every cap is at most kMaxCap.
class Mono {
public:
    Mono() = default;

    int operator[](int lane) const {
        const std::uint64_t w = lane < 8 ? lo_ : hi_;
        return static_cast<int>((w >> (8 * (lane & 7))) & 0xFFu);
    }
    void set(int lane, int exponent);

    bool is_one() const { return lo_ == 0 && hi_ == 0; }

    friend Mono operator+(Mono a, const Mono& b) {
        a.lo_ += b.lo_;
        a.hi_ += b.hi_;
        return a;
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

    std::size_t hash() const {
        std::uint64_t h = lo_ * 0x9E3779B97F4A7C15ull;
        h ^= (hi_ + 0x632BE59BD9B4E019ull) * 0xC2B2AE3D27D4EB4Full;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }

private:
    std::uint64_t lo_ = 0;
    std::uint64_t hi_ = 0;
};

struct MonoHash {
    std::size_t operator()(const Mono& m) const { return m.hash(); }
};

struct Degrees {
    int q = 0;
    int x = 0;
    int y = 0;
};

Degrees degrees(const VarSpace& space, const Mono& m);
bool in_range(const VarSpace& space, const TruncSpec& trunc, const Mono& m);
bool canonical_less(const VarSpace& space, const Mono& a, const Mono& b);
Mono make_mono(const VarSpace& space, std::initializer_list<std::pair<Var, int>> powers);
std::string mono_string(const VarSpace& space, const Mono& m);

class Series {
public:
    struct Term {
        Mono mono;
        Rat coeff;
    };

    Series() = default;
    Series(VarSpace space, TruncSpec trunc);

    static Series constant(VarSpace space, TruncSpec trunc, const Rat& c);
    static Series variable(VarSpace space, TruncSpec trunc, Var v, const Rat& c = Rat(1));
    static Series monomial(VarSpace space, TruncSpec trunc, const Mono& m, const Rat& c);
    /// Sums duplicate monomials, drops zeros and out-of-range terms, sorts.
    static Series from_terms(VarSpace space, TruncSpec trunc, std::vector<Term> terms);

    const VarSpace& space() const { return space_; }
    const TruncSpec& trunc() const { return trunc_; }
    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of `m`; zero if absent, RangeError if `m` lies beyond the
    /// truncation.
    Rat coeff(const Mono& m) const;
    Rat constant_term() const;

    /// Restricts to the meet of the current and the given caps.
    Series truncated(const TruncSpec& caps) const;
    /// Same terms under a different truncation (terms beyond it dropped).
    Series with_trunc(const TruncSpec& caps) const;

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Rat& c);

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(Series a, const Rat& c) { return a *= c; }
    friend Series operator*(const Rat& c, Series a) { return a *= c; }
    friend Series operator-(Series a) { return a *= Rat(-1); }

    /// Same space, same caps, same terms.
    friend bool operator==(const Series& a, const Series& b);

    /// Human-readable polynomial, terms in canonical order.
    std::string to_string() const;

private:
    /// Takes terms already sorted, unique, nonzero and in range.
    static Series adopt_sorted(VarSpace space, TruncSpec trunc, std::vector<Term> terms);

    VarSpace space_;
    TruncSpec trunc_;
    std::vector<Term> terms_;

    friend class SeriesBuilder;
    friend Series add(const Series& s, const Series& t);
    friend Series mul(const Series& s, const Series& t);
};

/// Accumulates terms under a fixed space and truncation, then freezes into
/// a canonical Series.  Out-of-range monomials are skipped on insertion.
class SeriesBuilder {
public:
    SeriesBuilder(VarSpace space, TruncSpec trunc);
    void add(const Mono& m, const Rat& c);
    void add_product(const Mono& m, const Rat& a, const Rat& b);
    void add(const Series& s, const Rat& scale = Rat(1));
    Series build() &&;

private:
    VarSpace space_;
    TruncSpec trunc_;
    std::unordered_map<Mono, Rat, MonoHash> acc_;
};

Series add(const Series& s, const Series& t);
Series mul(const Series& s, const Series& t);
Series deriv(const Series& s, Var v);
/// exp(s) for s with zero constant term; DomainError otherwise.
Series exp_series(const Series& s);
/// Drops every term with a positive exponent on one of `vars`.
Series set_zero(const Series& s, std::span<const Var> vars);
Series set_zero(const Series& s, std::initializer_list<Var> vars);
Series set_zero_group(const Series& s, Group g);
/// Substitutes v -> c*v for every variable of group `g`.
Series scale_group(const Series& s, Group g, const Rat& c);

/// Square matrix of Series over one space and truncation.
class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(int dim, VarSpace space, TruncSpec trunc);

    static SeriesMatrix identity(int dim, VarSpace space, TruncSpec trunc);

    int dim() const { return dim_; }
    const VarSpace& space() const { return space_; }
    const TruncSpec& trunc() const { return trunc_; }

    Series& operator()(int i, int j) { return entries_[index(i, j)]; }
    const Series& operator()(int i, int j) const { return entries_[index(i, j)]; }

    SeriesMatrix transposed() const;
    SeriesMatrix truncated(const TruncSpec& caps) const;

    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
    friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
    friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
    friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * dim_ + j); }

    int dim_ = 0;
    VarSpace space_;
    TruncSpec trunc_;
    std::vector<Series> entries_;
};

/// Inverse by exact inversion of the constant term followed by Newton
/// correction N <- N(2I - MN) until the residual vanishes in the truncation.
/// DomainError if the constant term is singular.
SeriesMatrix matrix_invert(const SeriesMatrix& m);

/// Dense rational matrix helpers used for constant terms and pairings.
using RatMatrix = std::vector<std::vector<Rat>>;
/// Gauss-Jordan inverse; DomainError when singular.
RatMatrix invert(const RatMatrix& m);

}  // namespace tqc
