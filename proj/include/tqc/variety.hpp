#pragma once

// Finite presentation of the even cohomology ring of a target variety: cup
// structure constants, Poincare pairing, curve-class lattice data.  Models
// are plain values, immutable once validated.

#include "tqc/rat.hpp"
#include "tqc/series.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tqc {

using ClassVec = std::vector<Rat>;

/// A primary invariant with known value, stated on basis insertions with no
/// tangencies.  The engine canonicalizes it before use.
struct Seed {
    std::vector<int> beta;
    std::vector<int> a;
    Rat value;
};

struct CohomologyModel {
    std::string name;
    int rank = 0;  ///< number of basis elements T_0..T_r
    int dim = 0;   ///< complex dimension
    int lattice_rank = 0;
    std::vector<int> codims;
    std::vector<std::string> names;
    std::vector<Rat> cup;  ///< rank^3, g_ij^k at (i*rank + j)*rank + k
    RatMatrix pairing;
    RatMatrix pairing_inv;
    std::vector<int> c1_pairing;  ///< <c1(TX), e_l> per lattice generator
    /// rank rows of lattice_rank integers: <T_k, e_l>; rows of non-divisors are zero.
    std::vector<std::vector<int>> divisor_pairing;
    std::vector<int> q_weights;  ///< grading weight of each q variable
    ClassVec hyperplane;         ///< the class z used for tangency conditions
    std::vector<Seed> seeds;

    const Rat& structure(int i, int j, int k) const {
        return cup[static_cast<std::size_t>((i * rank + j) * rank + k)];
    }
    const Rat& g(int i, int j) const { return pairing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const Rat& g_inv(int i, int j) const {
        return pairing_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    bool is_divisor(int k) const { return codims[static_cast<std::size_t>(k)] == 1; }
    int codim(int k) const { return codims[static_cast<std::size_t>(k)]; }
    /// <T_k, beta>; zero for non-divisor classes.
    int divisor_degree(int k, const std::vector<int>& beta) const;
    int c1_degree(const std::vector<int>& beta) const;
    /// Index of the unique basis element of top codimension, or -1.
    int point_index() const;
    VarSpace space() const;
};

enum class PresetId { p1, p2, p3, p1xp1 };

std::optional<PresetId> parse_preset(std::string_view id);
std::string preset_name(PresetId id);
CohomologyModel preset(PresetId id);
std::vector<PresetId> all_presets();

ClassVec basis_vec(const CohomologyModel& m, int i);
ClassVec cup_vec(const CohomologyModel& m, const ClassVec& u, const ClassVec& v);
/// Integral over the fundamental class: sum_k v_k g_0k.
Rat trace(const CohomologyModel& m, const ClassVec& v);
/// Poincare pairing of two class vectors.
Rat pair(const CohomologyModel& m, const ClassVec& u, const ClassVec& v);

/// dimX + <c1, beta> + n - 3; DomainError when beta is not effective or zero.
int vdim(const CohomologyModel& m, const std::vector<int>& beta, int marks);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant; violations are reported, not thrown.
/// Fills nothing in; `pairing_inv` must already be present and is checked.
ValidationReport validate(const CohomologyModel& m);

/// Computes pairing_inv from pairing when it is absent.  DomainError if the
/// pairing is singular.
void complete_inverse(CohomologyModel& m);

}  // namespace tqc
