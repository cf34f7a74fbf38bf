#ifndef QBILATERAL_TYPES_HPP
#define QBILATERAL_TYPES_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace qb {

using Complex = std::complex<double>;

// Error hierarchy. Everything thrown by the library derives from Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
struct PoleProximity : Error {
    using Error::Error;
};
struct ZeroDenominator : Error {
    using Error::Error;
};
struct NonConvergence : Error {
    using Error::Error;
};
struct DegenerateParameters : Error {
    using Error::Error;
};
struct SamplerExhausted : Error {
    using Error::Error;
};

/// Base of the q-series. Construction enforces 0 < |q| < 1 with guard
/// bands: |q| <= 1e-12 and |q| >= 1 - 1e-12 are rejected.
struct QBase {
    Complex q;

    QBase() : q(0.5, 0.0) {}
    explicit QBase(Complex value) : q(value) {
        const double aq = std::abs(q);
        if (!(aq > 1e-12) || !(aq < 1.0 - 1e-12) || !std::isfinite(aq))
            throw DomainError("QBase: |q| must lie strictly inside (0,1)");
    }
    explicit QBase(double value) : QBase(Complex(value, 0.0)) {}

    double abs() const { return std::abs(q); }
};

struct PochTolerance {
    double rel_tol = 1e-14;
    int max_factors = 10000;
};

enum class Method { series, quadrature, closed_form };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::quadrature: return "quadrature";
        case Method::closed_form: return "closed_form";
    }
    return "?";
}

struct EvalResult {
    Complex value{0.0, 0.0};
    double err_est = 0.0;  // absolute
    long work = 0;         // terms or nodes consumed
    Method method = Method::series;
};

/// Complex value stored as m * 2^e with |m| kept near [0.5, 1).
/// Infinite q-Pochhammer products at large arguments overflow binary64
/// by hundreds of decimal orders; all internal product/quadrature
/// arithmetic runs on this representation.
struct ScaledComplex {
    Complex m{0.0, 0.0};
    long e = 0;

    ScaledComplex() = default;
    ScaledComplex(Complex mantissa, long exponent) : m(mantissa), e(exponent) { normalize(); }

    static ScaledComplex from(Complex v) { return ScaledComplex(v, 0); }
    static ScaledComplex one() { return ScaledComplex(Complex(1.0, 0.0), 0); }

    bool is_zero() const { return m == Complex(0.0, 0.0); }

    void normalize() {
        const double am = std::abs(m);
        if (am == 0.0) {
            e = 0;
            return;
        }
        if (!std::isfinite(am)) throw Error("ScaledComplex: non-finite mantissa");
        int ex = 0;
        std::frexp(am, &ex);
        if (ex != 0) {
            m = Complex(std::ldexp(m.real(), -ex), std::ldexp(m.imag(), -ex));
            e += ex;
        }
    }

    /// log2 of the magnitude; -inf for zero.
    double log2_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return static_cast<double>(e) + std::log2(std::abs(m));
    }

    ScaledComplex& operator*=(const ScaledComplex& o) {
        m *= o.m;
        e += o.e;
        normalize();
        return *this;
    }
    ScaledComplex& operator*=(Complex v) {
        m *= v;
        normalize();
        return *this;
    }
    ScaledComplex& operator/=(const ScaledComplex& o) {
        if (o.is_zero()) throw ZeroDenominator("ScaledComplex: division by zero");
        m /= o.m;
        e -= o.e;
        normalize();
        return *this;
    }

    friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
    friend ScaledComplex operator*(ScaledComplex a, Complex b) { return a *= b; }
    friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }

    /// Convert back to binary64. Throws on overflow; gradual underflow to 0.
    Complex to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        if (log2_abs() > 1020.0) throw Error("ScaledComplex: value overflows binary64");
        if (log2_abs() < -1065.0) return {0.0, 0.0};
        long ex = e;
        Complex v = m;
        // apply exponent in chunks to dodge intermediate under/overflow
        while (ex > 600) {
            v = Complex(std::ldexp(v.real(), 600), std::ldexp(v.imag(), 600));
            ex -= 600;
        }
        while (ex < -600) {
            v = Complex(std::ldexp(v.real(), -600), std::ldexp(v.imag(), -600));
            ex += 600;
        }
        return Complex(std::ldexp(v.real(), static_cast<int>(ex)),
                       std::ldexp(v.imag(), static_cast<int>(ex)));
    }
};

/// Integer power with scaled result (|base|^n can leave double range).
inline ScaledComplex scaled_pow(Complex base, long n) {
    if (n == 0) return ScaledComplex::one();
    ScaledComplex b = ScaledComplex::from(base);
    bool invert = n < 0;
    unsigned long k = invert ? static_cast<unsigned long>(-(n + 1)) + 1ul : static_cast<unsigned long>(n);
    ScaledComplex acc = ScaledComplex::one();
    while (k) {
        if (k & 1ul) acc *= b;
        b *= b;
        k >>= 1;
    }
    if (invert) {
        ScaledComplex r = ScaledComplex::one();
        r /= acc;
        return r;
    }
    return acc;
}

/// Internal result carrying a scaled value and a relative error estimate.
struct ScaledEval {
    ScaledComplex value;
    double rel_err = 0.0;
    long work = 0;
    Method method = Method::closed_form;
};

// Distance from z to the ray R_{>=1} (the continuation cut).
inline double dist_to_cut(Complex z) {
    if (z.real() >= 1.0) return std::abs(z.imag());
    return std::abs(z - Complex(1.0, 0.0));
}

// Distance from z to the open ray R_{>0}.
inline double dist_to_positive_ray(Complex z) {
    if (z.real() > 0.0) return std::abs(z.imag());
    return std::abs(z);
}

}  // namespace qb

#endif
