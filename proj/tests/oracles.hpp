#pragma once

// Independent reference computations for the plane.  They share nothing
// with the engine beyond GMP integers.

#include <gmpxx.h>

#include <map>
#include <tuple>
#include <vector>

namespace oracle {

inline mpz_class choose(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// Rational plane curves of degree d through 3d-1 points, by the closed
/// recursion N_d = sum N_d1 N_d2 (d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1)).
inline std::vector<mpz_class> kontsevich(int max_d) {
    std::vector<mpz_class> n(static_cast<std::size_t>(max_d + 1), 0);
    if (max_d >= 1) n[1] = 1;
    for (int d = 2; d <= max_d; ++d) {
        mpz_class s = 0;
        for (int d1 = 1; d1 < d; ++d1) {
            const int d2 = d - d1;
            const mpz_class a = mpz_class(d1) * d1 * d2 * d2 * choose(3 * d - 4, 3 * d1 - 2);
            const mpz_class b = mpz_class(d1) * d1 * d1 * d2 * choose(3 * d - 4, 3 * d1 - 1);
            s += n[static_cast<std::size_t>(d1)] * n[static_cast<std::size_t>(d2)] * (a - b);
        }
        n[static_cast<std::size_t>(d)] = s;
    }
    return n;
}

/// Scalar tangency potential of the plane restricted to x_2 (points) and y_1
/// (tangency to a line), filled degree by degree from two relations only:
///
///   Gamma_222 = Gamma_112^2 - Gamma_111 Gamma_122 + 2y_1 (Gamma_122 Gamma_112 - Gamma_111 Gamma_222)
///               + 2y_1^2 (Gamma_122^2 - Gamma_112 Gamma_222)
///   Gamma_{y_1 11} = -Gamma_12 + Gamma_11 Gamma_111 + 2y_1 (Gamma_11 Gamma_211 + Gamma_12 Gamma_111)
///               + 2y_1^2 Gamma_12 Gamma_211
///
/// with Gamma = sum_d q^d e^{d x_1} sum N(d;a,b) x_2^a/a! y_1^b/b!, a + b = 3d - 1,
/// and the single input N(1;2,0) = 1.
class PlaneTangency {
public:
    explicit PlaneTangency(int max_d) : max_d_(max_d) {
        for (int d = 1; d <= max_d; ++d)
            for (int a = 3 * d - 1; a >= 0; --a) fill(d, a, 3 * d - 1 - a);
    }

    mpq_class n(int d, int a, int b) const {
        if (d < 1 || d > max_d_ || a < 0 || b < 0 || a + b != 3 * d - 1) return 0;
        return table_.at({d, a, b});
    }

    /// Curves through `a` points tangent to `b` lines: each tangency is
    /// tau1(h) + tau0(pt).
    mpq_class characteristic(int d, int a, int b) const {
        mpq_class s = 0;
        for (int k = 0; k <= b; ++k) s += mpq_class(choose(b, k)) * n(d, a + k, b - k);
        return s;
    }

private:
    /// Coefficient at q^d x_2^a/a! y_1^b/b! of the derivative with m x_1's
    /// and p x_2's.
    mpq_class term(int m, int p, int d, int a, int b) const {
        mpq_class dm = 1;
        for (int i = 0; i < m; ++i) dm *= d;
        return dm * n(d, a + p, b);
    }

    /// Coefficient at q^d x^a/a! y^b/b! of F_(m1,p1) F_(m2,p2).
    mpq_class prod(int m1, int p1, int m2, int p2, int d, int a, int b) const {
        if (b < 0) return 0;
        mpq_class s = 0;
        for (int d1 = 1; d1 < d; ++d1)
            for (int a1 = 0; a1 <= a; ++a1)
                for (int b1 = 0; b1 <= b; ++b1) {
                    const mpq_class l = term(m1, p1, d1, a1, b1);
                    if (l == 0) continue;
                    s += mpq_class(choose(a, a1) * choose(b, b1)) * l * term(m2, p2, d - d1, a - a1, b - b1);
                }
        return s;
    }

    void fill(int d, int a, int b) {
        mpq_class v;
        if (d == 1 && a == 2) {
            v = 1;
        } else if (a >= 3) {
            const int a0 = a - 3;
            v = prod(2, 1, 2, 1, d, a0, b) - prod(3, 0, 1, 2, d, a0, b);
            if (b >= 1) v += 2 * b * (prod(1, 2, 2, 1, d, a0, b - 1) - prod(3, 0, 0, 3, d, a0, b - 1));
            if (b >= 2)
                v += 2 * b * (b - 1) * (prod(1, 2, 1, 2, d, a0, b - 2) - prod(2, 1, 0, 3, d, a0, b - 2));
        } else {
            // d^2 N(d; a, b) from the y_1 relation at (a, b - 1)
            const int b0 = b - 1;
            mpq_class s = -mpq_class(d) * table_.at({d, a + 1, b0});
            s += prod(2, 0, 3, 0, d, a, b0);
            if (b0 >= 1) s += 2 * b0 * (prod(2, 0, 2, 1, d, a, b0 - 1) + prod(1, 1, 3, 0, d, a, b0 - 1));
            if (b0 >= 2) s += 2 * b0 * (b0 - 1) * prod(1, 1, 2, 1, d, a, b0 - 2);
            v = s / (d * d);
        }
        table_[{d, a, b}] = v;
    }

    int max_d_;
    std::map<std::tuple<int, int, int>, mpq_class> table_;
};

}  // namespace oracle
