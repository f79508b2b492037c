#pragma once

// The tangency quantum product T_i * T_j = T_i T_j + sum Gamma_ije gamma^ef T_f
// and the identity checks built on it.

#include "tqc/metric.hpp"
#include "tqc/potential.hpp"
#include "tqc/report.hpp"
#include "tqc/series.hpp"
#include "tqc/variety.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tqc {

struct ProductTable {
    int rank = 0;
    TruncSpec trunc;
    std::string provenance;
    std::vector<Series> constants;  ///< C_ij^f at (i*rank + j)*rank + f

    const Series& c(int i, int j, int f) const {
        return constants[static_cast<std::size_t>((i * rank + j) * rank + f)];
    }
    ProductTable truncated(const TruncSpec& caps) const;
};

/// Gamma_ijk and Phi_ijk restricted to `trunc`.  The potentials must carry
/// three more orders in x than `trunc`; StructuralError otherwise.
std::vector<Series> third_derivatives(const CohomologyModel& m, const Series& s, const TruncSpec& trunc);

/// C_ij^f = g_ij^f + sum_e Gamma_ije gamma^ef, cross-checked against
/// sum_e Phi_ije gamma^ef.  `pot` needs x-cap trunc.x + 3, `met` must cover
/// `trunc`; StructuralError otherwise, VerificationError if the two forms
/// disagree.
ProductTable build_product(const CohomologyModel& m, const PotentialSeries& pot, const DeformedMetric& met,
                           const TruncSpec& trunc);

/// Bilinear extension of the table.
ElementSeries multiply(const ProductTable& p, const ElementSeries& u, const ElementSeries& v);

/// Gamma_(ij)kl + Gamma_ij(kl) + sum Gamma_ije gamma^ef Gamma_fkl is invariant
/// under (i,j,k,l) -> (j,k,i,l), for every quadruple.
CheckReport check_wdvv_deformed(const CohomologyModel& m, const PotentialSeries& pot, const DeformedMetric& met,
                                const TruncSpec& trunc);

/// The single scalar relation expressing Gamma_222 on the projective plane.
/// DomainError for any other model.
CheckReport check_p2_gamma222(const CohomologyModel& m, const PotentialSeries& pot, const DeformedMetric& met,
                              const TruncSpec& trunc);

/// Gamma_{y_i x_j x_k} = Gamma_{x_i (x_j x_k)} - Gamma_{(x_i x_j) x_k} - Gamma_{(x_i x_k) x_j}
///                       + sum Gamma_{x_i x_e} gamma^ef Gamma_{x_f x_j x_k}
/// for every (i,j,k).  `pot` needs caps (q, x + 3, y + 1) of `trunc`.
CheckReport check_trr(const CohomologyModel& m, const PotentialSeries& pot, const DeformedMetric& met,
                      const TruncSpec& trunc);

/// (T_i*T_j)*T_k = T_i*(T_j*T_k) for every basis triple.
CheckReport check_associativity(const ProductTable& p);

/// gamma(T_i*T_j, T_k) = gamma(T_i, T_j*T_k) and C_ij^f = sum_e Phi_ije gamma^ef.
CheckReport check_frobenius(const CohomologyModel& m, const ProductTable& p, const PotentialSeries& pot,
                            const DeformedMetric& met);

/// d/dx_0 Gamma = 0, d/dy_0 Gamma = -2 Gamma, d/dy_0 C_ij^f = 0.  Each
/// identity is compared where the derivative is exact, one order below the
/// cap of the differentiated series.
CheckReport check_y0_scaling(const ProductTable& p, const Series& gamma_pot);

/// Lower times upper gamma is the identity and gamma(0) = g.
CheckReport check_metric_duality(const CohomologyModel& m, const DeformedMetric& met);

/// Sum over tangency vectors of the degree-zero formula reproduces gamma_ijk.
CheckReport check_degree_zero(const CohomologyModel& m, const DeformedMetric& met);

/// Names accepted by run_checks, in execution order.
const std::vector<std::string>& check_names();

/// Builds every object the selected checks need at the caps they need and
/// runs them against the region `trunc`.  StructuralError for an unknown
/// check name, DomainError for gamma222 on a model other than P^2.
std::vector<CheckReport> run_checks(InvariantStore& store, const std::vector<std::string>& checks,
                                    const TruncSpec& trunc);

}  // namespace tqc
