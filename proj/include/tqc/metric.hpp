#pragma once

// Intersection polynomials phi(y) = tr exp(y) of the target and the deformed
// metric gamma_ij(y) = tr(exp(-2y) T_i T_j) built from them.

#include "tqc/report.hpp"
#include "tqc/series.hpp"
#include "tqc/variety.hpp"

#include <vector>

namespace tqc {

/// An element of H (x) Q[[q,x,y]]: one coefficient series per basis element.
using ElementSeries = std::vector<Series>;

ElementSeries zero_element(const CohomologyModel& m, const TruncSpec& trunc);
/// sum_i v_i T_i for the variables v of group `g`, scaled by `c`.
ElementSeries generic_element(const CohomologyModel& m, Group g, const TruncSpec& trunc, const Rat& c = Rat(1));
ElementSeries basis_element(const CohomologyModel& m, int i, const TruncSpec& trunc);
ElementSeries cup_series(const CohomologyModel& m, const ElementSeries& u, const ElementSeries& v);
/// exp(v) in the cohomology algebra; the coefficients of v must have no
/// constant term.
ElementSeries exp_element(const CohomologyModel& m, const ElementSeries& v);
Series trace_series(const CohomologyModel& m, const ElementSeries& v);

struct PhiData {
    int rank = 0;
    Series phi;
    SeriesMatrix phi2;         ///< phi_ij
    std::vector<Series> phi3;  ///< phi_ijk, rank^3
    SeriesMatrix up_low;       ///< phi^i_j at (i, j)
    SeriesMatrix low_up;       ///< phi_j^i at (j, i)
    SeriesMatrix upper;        ///< phi^ij

    const Series& third(int i, int j, int k) const {
        return phi3[static_cast<std::size_t>((i * rank + j) * rank + k)];
    }
};

/// phi and its derivatives up to order three, with indices raised by g^ij.
/// phi is expanded three orders past `trunc` so that every derivative is
/// exact within `trunc`.
PhiData build_phi(const CohomologyModel& m, const TruncSpec& trunc);

struct DeformedMetric {
    int rank = 0;
    SeriesMatrix lower;          ///< gamma_ij(y) = phi_ij(-2y)
    SeriesMatrix upper;          ///< gamma^ij(y) = phi^ij(2y)
    std::vector<Series> triple;  ///< gamma_ijk(y) = phi_ijk(-2y)

    const Series& gamma3(int i, int j, int k) const {
        return triple[static_cast<std::size_t>((i * rank + j) * rank + k)];
    }
    const TruncSpec& trunc() const { return lower.trunc(); }
};

/// Closed-form gamma, cross-validated against series inversion of the lower
/// matrix.  VerificationError if the two disagree.
DeformedMetric build_gamma(const CohomologyModel& m, const TruncSpec& trunc);

/// (phi^e_p(y))_e with exp(y) T_p = sum_e T_e phi^e_p(y), checked against
/// the direct cup expansion.
std::vector<Series> mult_by_exp(const CohomologyModel& m, int p, const TruncSpec& trunc);

/// phi(y' + y'') = sum_ef phi_e(y') g^ef phi_f(y'') for the given elements.
CheckReport check_sum_formula(const CohomologyModel& m, const ElementSeries& y1, const ElementSeries& y2);
/// Symbolic version with y' the y-variables and y'' the x-variables, plus the
/// derivative consequences: phi_e by differentiation, the first y'-derivative
/// of the identity, and phi^i_k^j = sum_l g_kl^i phi^lj.
CheckReport check_sum_formula(const CohomologyModel& m, const TruncSpec& trunc);

/// T_i T_j = sum_ef gamma_ije gamma^ef T_f for all i, j.
CheckReport check_cup_via_gamma(const CohomologyModel& m, const TruncSpec& trunc);

/// C! times the coefficient of y^C in gamma^ef, computed in closed form as
/// 2^|C| sum_ab g^ea tr(T^C T_a T_b) g^bf.
Rat gamma_upper_moment(const CohomologyModel& m, int e, int f, const std::vector<int>& c);

}  // namespace tqc
