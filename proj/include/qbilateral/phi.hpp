#ifndef QBILATERAL_PHI_HPP
#define QBILATERAL_PHI_HPP

#include <vector>

#include "qbilateral/qcore.hpp"
#include "qbilateral/types.hpp"

namespace qb {

/// One (r+1)phi_r instance: numerator parameters a_1..a_{r+1},
/// denominator parameters b_1..b_r, base q and argument z.
struct PhiSpec {
    std::vector<Complex> num;
    std::vector<Complex> den;
    QBase q;
    Complex z;
};

/// Contour-quadrature controls. radius <= 0 selects the automatic radius.
/// Node counts are powers of two; they double until two successive
/// estimates agree.
struct QuadratureConfig {
    double radius = 0.0;
    int min_nodes = 64;
    int max_nodes = 65536;
    double tol = 1e-11;
};

/// Laurent-coefficient target: the product
///   prod_i (alpha_i t;q)_inf/(gamma_i t;q)_inf
///   * prod_i (beta_i/t;q)_inf/(delta_i/t;q)_inf
/// on the annulus max|delta_i| < |t| < min(1/|gamma_i|).
struct GeneralProductSpec {
    std::vector<Complex> alpha;
    std::vector<Complex> gamma;
    std::vector<Complex> beta;
    std::vector<Complex> delta;
    QBase q;
};

/// Convergent power-series branch, |z| < 1. Term recursion with a
/// five-term confirmation window and geometric tail bound.
EvalResult phi_series(const PhiSpec& spec, double tol = 1e-13);

/// phi on C minus the cut [1,inf): series for |z| < 1, otherwise the
/// contour-integral continuation on the circle max|a_i| < |t| = rho < 1.
EvalResult phi_continued(const PhiSpec& spec, const QuadratureConfig& quad = {});

/// Contour-integral evaluation regardless of |z| (used to cross-check the
/// series branch). Requires max|a_i| < 1 and z off the cut.
EvalResult phi_quadrature(const PhiSpec& spec, const QuadratureConfig& quad = {});

ScaledEval phi_continued_scaled(const PhiSpec& spec, const QuadratureConfig& quad = {});
ScaledEval phi_quadrature_scaled(const PhiSpec& spec, const QuadratureConfig& quad = {});

/// Evaluates phi(num; den; q, x q^n) along the geometric ladder of
/// arguments appearing in bilateral sums. For |x q^n| < 1 the series is
/// used directly; for deeper negative n the value follows from the linear
/// q-difference equation in z satisfied by the series,
///   sum_s (A_s q^{-s}/z - B_s) f(q^s z) = (sum_s A_s q^{-s})/z,
/// with A(X) = (1-qX) prod(1-b_i X), B(X) = prod(1-a_i X), stepped
/// outward from series-computed seeds. The outward direction follows the
/// dominant solution, so the relative error stays bounded where raw
/// contour quadrature loses ~ -n log2(max|a_i|) bits to cancellation.
/// Negative indices must be requested in non-increasing order of depth or
/// arbitrary order (values are cached).
class PhiLadder {
  public:
    PhiLadder(std::vector<Complex> num, std::vector<Complex> den, QBase q, Complex x,
              double seed_tol = 1e-13);

    /// phi at argument x q^n, any integer n.
    ScaledEval at(long n);

  private:
    void extend_down(long n);

    std::vector<Complex> num_, den_;
    QBase q_;
    Complex x_;
    int p_;                     // = num_.size(), the recursion order
    std::vector<Complex> c_;    // A_s q^{-s}
    std::vector<Complex> B_;    // B_s
    double seed_tol_;
    long anchor_ = 0;           // smallest n with a series-computed seed
    // vals_[i] = f(x q^{anchor_ + p_ - 1 - i}); grows toward negative n
    std::vector<ScaledComplex> vals_;
    std::vector<double> rel_errs_;
    long work_ = 0;
};

/// Coefficient of t^n in the Laurent expansion of the general product.
EvalResult laurent_coeff(const GeneralProductSpec& spec, int n, const QuadratureConfig& quad = {});

/// Default contour radius for the continuation of a phi with the given
/// numerator parameters: sqrt of the largest nonzero |a_i|, or 0.5 when
/// the list is empty or all zero.
double default_phi_radius(const std::vector<Complex>& num);

}  // namespace qb

#endif
