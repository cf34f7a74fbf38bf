#ifndef QBILATERAL_QCORE_HPP
#define QBILATERAL_QCORE_HPP

#include <vector>

#include "qbilateral/types.hpp"

namespace qb {

/// Finite q-shifted factorial (a;q)_n.
/// n >= 0: prod_{j=0}^{n-1} (1 - a q^j).
/// n = -m < 0: 1 / (a q^{-m}; q)_m. Throws PoleProximity when a
/// denominator factor is within 1e-12 of zero.
Complex qpoch_finite(Complex a, const QBase& q, int n);

/// Infinite q-shifted factorial (a;q)_inf, truncated with the geometric
/// tail bound |a| |q|^J / (1 - |q|).
EvalResult qpoch_infinite(Complex a, const QBase& q, const PochTolerance& tol = {});

/// Ratio of products of infinite q-shifted factorials,
/// prod (n_i;q)_inf / prod (d_i;q)_inf. Throws ZeroDenominator when a
/// denominator product is within 1e-10 of zero.
EvalResult qpoch_ratio(const std::vector<Complex>& numerators,
                       const std::vector<Complex>& denominators, const QBase& q,
                       const PochTolerance& tol = {});

// Scaled variants for internal use where products leave double range.
ScaledEval qpoch_infinite_scaled(Complex a, const QBase& q, const PochTolerance& tol = {});
ScaledEval qpoch_ratio_scaled(const std::vector<Complex>& numerators,
                              const std::vector<Complex>& denominators, const QBase& q,
                              const PochTolerance& tol = {});

/// True when s lies within `band` of some q^{-m}, m >= 0, i.e. when
/// (s;q)_inf has a zero at distance < band.
bool near_infinite_poch_zero(Complex s, const QBase& q, double band);

/// True when s lies within `band` of some integer power q^m, m in Z.
bool near_q_power(Complex s, const QBase& q, double band);

}  // namespace qb

#endif
