#include "qbilateral/qcore.hpp"

#include <cmath>

namespace qb {

namespace {

constexpr double kFinitePoleBand = 1e-12;
constexpr double kInfiniteZeroBand = 1e-10;

}  // namespace

Complex qpoch_finite(Complex a, const QBase& q, int n) {
    if (n >= 0) {
        Complex prod(1.0, 0.0);
        Complex qp(1.0, 0.0);
        for (int j = 0; j < n; ++j) {
            prod *= Complex(1.0, 0.0) - a * qp;
            qp *= q.q;
        }
        return prod;
    }
    // (a;q)_{-m} = 1 / (a q^{-m}; q)_m
    const int m = -n;
    Complex prod(1.0, 0.0);
    // factors (1 - a q^{-m+j}), j = 0..m-1, computed from the most
    // negative exponent upward
    Complex qp = scaled_pow(q.q, -m).to_complex();
    for (int j = 0; j < m; ++j) {
        const Complex f = Complex(1.0, 0.0) - a * qp;
        if (std::abs(f) < kFinitePoleBand)
            throw PoleProximity("qpoch_finite: factor within 1e-12 of zero at negative index");
        prod *= f;
        qp *= q.q;
    }
    return Complex(1.0, 0.0) / prod;
}

ScaledEval qpoch_infinite_scaled(Complex a, const QBase& q, const PochTolerance& tol) {
    ScaledEval out;
    out.value = ScaledComplex::one();
    out.method = Method::closed_form;
    if (a == Complex(0.0, 0.0)) return out;

    const double absq = q.abs();
    const double small = tol.rel_tol / (1.0 + std::abs(a));
    Complex aq = a;  // a q^j
    int j = 0;
    for (; j < tol.max_factors; ++j) {
        const double mag = std::abs(aq);
        if (mag < small && mag / (1.0 - absq) < tol.rel_tol) break;
        out.value *= Complex(1.0, 0.0) - aq;
        aq *= q.q;
    }
    if (j == tol.max_factors)
        throw NonConvergence("qpoch_infinite: max_factors exhausted");
    out.rel_err = std::abs(aq) / (1.0 - absq);
    out.work = j;
    return out;
}

EvalResult qpoch_infinite(Complex a, const QBase& q, const PochTolerance& tol) {
    const ScaledEval s = qpoch_infinite_scaled(a, q, tol);
    EvalResult r;
    r.value = s.value.to_complex();
    r.err_est = s.rel_err * std::abs(r.value);
    r.work = s.work;
    r.method = Method::closed_form;
    return r;
}

ScaledEval qpoch_ratio_scaled(const std::vector<Complex>& numerators,
                              const std::vector<Complex>& denominators, const QBase& q,
                              const PochTolerance& tol) {
    ScaledEval out;
    out.value = ScaledComplex::one();
    out.method = Method::closed_form;
    for (const Complex& a : numerators) {
        const ScaledEval f = qpoch_infinite_scaled(a, q, tol);
        out.value *= f.value;
        out.rel_err += f.rel_err;
        out.work += f.work;
        if (out.value.is_zero()) {
            // exact zero numerator kills the whole ratio, but denominator
            // zeros must still be rejected below
            break;
        }
    }
    for (const Complex& d : denominators) {
        const ScaledEval f = qpoch_infinite_scaled(d, q, tol);
        if (f.value.log2_abs() < std::log2(kInfiniteZeroBand))
            throw ZeroDenominator("qpoch_ratio: denominator product within 1e-10 of zero");
        if (!out.value.is_zero()) out.value /= f.value;
        out.rel_err += f.rel_err;
        out.work += f.work;
    }
    return out;
}

EvalResult qpoch_ratio(const std::vector<Complex>& numerators,
                       const std::vector<Complex>& denominators, const QBase& q,
                       const PochTolerance& tol) {
    const ScaledEval s = qpoch_ratio_scaled(numerators, denominators, q, tol);
    EvalResult r;
    r.value = s.value.to_complex();
    r.err_est = s.rel_err * std::abs(r.value);
    r.work = s.work;
    r.method = Method::closed_form;
    return r;
}

bool near_infinite_poch_zero(Complex s, const QBase& q, double band) {
    const double abss = std::abs(s);
    ScaledComplex qp = ScaledComplex::one();  // q^{-m}
    const ScaledComplex qinv = ScaledComplex::one() / ScaledComplex::from(q.q);
    for (int m = 0; m < 4000; ++m) {
        if (std::exp2(qp.log2_abs()) > abss + band) break;
        if (std::abs(s - qp.to_complex()) < band) return true;
        qp *= qinv;
    }
    return false;
}

bool near_q_power(Complex s, const QBase& q, double band) {
    if (near_infinite_poch_zero(s, q, band)) return true;
    // positive powers q^m, m >= 1, shrink toward 0
    Complex qp = q.q;
    const double abss = std::abs(s);
    for (int m = 1; m < 4000; ++m) {
        if (std::abs(qp) + band < abss) break;
        if (std::abs(s - qp) < band) return true;
        qp *= q.q;
        if (std::abs(qp) < 1e-300) break;
    }
    return false;
}

}  // namespace qb
