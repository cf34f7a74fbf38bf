#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qbilateral/qcore.hpp"

using namespace qb;

namespace {

// deterministic parameter draws for the property suites
struct Gen {
    std::mt19937_64 g;
    explicit Gen(std::uint64_t seed) : g(seed) {}
    double u() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
    Complex param(double lo = 0.05, double hi = 0.9) {
        const double mag = std::exp(std::log(lo) + u() * (std::log(hi) - std::log(lo)));
        const double ang = u() * 2.0 * M_PI;
        return Complex(mag * std::cos(ang), mag * std::sin(ang));
    }
    QBase base() { return QBase(0.1 + 0.8 * u()); }
};

double rel_diff(Complex a, Complex b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

// independent oracle: direct product with a fixed large factor count
Complex naive_qpoch_infinite(Complex a, const QBase& q, int factors = 200) {
    Complex p(1.0, 0.0);
    Complex aq = a;
    for (int j = 0; j < factors; ++j) {
        p *= Complex(1.0, 0.0) - aq;
        aq *= q.q;
    }
    return p;
}

}  // namespace

TEST_CASE("finite symbol: explicit values") {
    const QBase q(0.5);
    CHECK(qpoch_finite(Complex(0.7, 0.0), q, 0) == Complex(1.0, 0.0));
    CHECK(qpoch_finite(Complex(0.7, 0.0), q, 2).real() == doctest::Approx(0.195).epsilon(1e-14));
    CHECK(qpoch_finite(Complex(0.7, 0.0), q, 2).imag() == doctest::Approx(0.0));
    // negative index: 1/(1 - 0.7*2) = -2.5, and the defining reciprocal
    const Complex m1 = qpoch_finite(Complex(0.7, 0.0), q, -1);
    CHECK(m1.real() == doctest::Approx(-2.5).epsilon(1e-14));
    const Complex back = qpoch_finite(Complex(0.7, 0.0) / q.q, q, 1);
    CHECK(std::abs(m1 * back - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("finite symbol: pole proximity at negative index") {
    const QBase q(0.5);
    // a q^{-1} = 1 exactly -> factor of the reciprocal denominator vanishes
    CHECK_THROWS_AS(qpoch_finite(Complex(0.5, 0.0), q, -1), PoleProximity);
}

TEST_CASE("infinite product: explicit values and oracle") {
    const QBase q(0.5);
    CHECK(qpoch_infinite(Complex(0.0, 0.0), q).value == Complex(1.0, 0.0));

    const EvalResult r = qpoch_infinite(Complex(0.5, 0.0), q);
    CHECK(std::abs(r.value - Complex(0.288788095087, 0.0)) < 1e-10);
    CHECK(rel_diff(r.value, naive_qpoch_infinite(Complex(0.5, 0.0), q)) < 1e-14);
    CHECK(r.err_est >= 0.0);
    CHECK(r.err_est < 1e-13);

    // defining recurrence at a = q = 0.3
    const QBase q3(0.3);
    const Complex lhs = qpoch_infinite(Complex(0.3, 0.0), q3).value;
    const Complex rhs =
        (Complex(1.0, 0.0) - Complex(0.3, 0.0)) * qpoch_infinite(Complex(0.09, 0.0), q3).value;
    CHECK(rel_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("infinite product: nonconvergence on pathological tolerance") {
    PochTolerance tol;
    tol.rel_tol = 1e-30;
    tol.max_factors = 3;
    CHECK_THROWS_AS(qpoch_infinite(Complex(0.5, 0.0), QBase(0.9), tol), NonConvergence);
}

TEST_CASE("ratio: cancellation, empty ratio, independent factors") {
    const QBase q(0.3);
    const Complex a(0.4, 0.2);
    CHECK(rel_diff(qpoch_ratio({a}, {a}, q).value, Complex(1.0, 0.0)) < 1e-14);
    CHECK(qpoch_ratio({}, {}, q).value == Complex(1.0, 0.0));

    const Complex n1(0.5, 0.0), n2(0.2, 0.0), d1(0.1, 0.0);
    const Complex expect = qpoch_infinite(n1, q).value * qpoch_infinite(n2, q).value /
                           qpoch_infinite(d1, q).value;
    CHECK(rel_diff(qpoch_ratio({n1, n2}, {d1}, q).value, expect) < 1e-13);
}

TEST_CASE("ratio: zero denominator guard") {
    const QBase q(0.5);
    // (1; q)_inf = 0: denominator symbol exactly q^0
    CHECK_THROWS_AS(qpoch_ratio({Complex(0.3, 0.0)}, {Complex(1.0, 0.0)}, q), ZeroDenominator);
    // q^{-2} = 4 is a zero of (a;q)_inf as well
    CHECK_THROWS_AS(qpoch_ratio({}, {Complex(4.0, 0.0)}, q), ZeroDenominator);
}

TEST_CASE("property: finite splitting (a;q)_n (aq^n;q)_m = (a;q)_{n+m}") {
    Gen gen(101);
    for (int it = 0; it < 1000; ++it) {
        const QBase q = gen.base();
        const Complex a = gen.param();
        const int n = static_cast<int>(gen.u() * 8) - 2;
        const int m = static_cast<int>(gen.u() * 8) - 2;
        Complex qn(1.0, 0.0);
        for (int j = 0; j < std::abs(n); ++j) qn *= n > 0 ? q.q : Complex(1.0, 0.0) / q.q;
        Complex lhs, rhs;
        try {
            lhs = qpoch_finite(a, q, n) * qpoch_finite(a * qn, q, m);
            rhs = qpoch_finite(a, q, n + m);
        } catch (const PoleProximity&) {
            continue;  // pole-free cases only, per the contract
        }
        CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)) < 1e-12);
    }
}

TEST_CASE("property: infinite recurrence (a;q)_inf = (1-a)(aq;q)_inf") {
    Gen gen(202);
    for (int it = 0; it < 1000; ++it) {
        const QBase q = gen.base();
        const Complex a = gen.param();
        const Complex lhs = qpoch_infinite(a, q).value;
        const Complex rhs = (Complex(1.0, 0.0) - a) * qpoch_infinite(a * q.q, q).value;
        CHECK(rel_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("property: finite/infinite splitting") {
    Gen gen(303);
    for (int it = 0; it < 1000; ++it) {
        const QBase q = gen.base();
        const Complex a = gen.param();
        const int n = static_cast<int>(gen.u() * 6);
        Complex qn(1.0, 0.0);
        for (int j = 0; j < n; ++j) qn *= q.q;
        const Complex lhs = qpoch_infinite(a, q).value;
        const Complex rhs = qpoch_finite(a, q, n) * qpoch_infinite(a * qn, q).value;
        CHECK(rel_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("property: negative-index reciprocity") {
    Gen gen(404);
    for (int it = 0; it < 1000; ++it) {
        const QBase q = gen.base();
        const Complex a = gen.param();
        const int m = 1 + static_cast<int>(gen.u() * 5);
        Complex qm(1.0, 0.0);
        for (int j = 0; j < m; ++j) qm /= q.q;
        Complex lhs;
        try {
            lhs = qpoch_finite(a, q, -m) * qpoch_finite(a * qm, q, m);
        } catch (const PoleProximity&) {
            continue;
        }
        CHECK(std::abs(lhs - Complex(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("scaled variants agree with plain ones") {
    Gen gen(505);
    for (int it = 0; it < 50; ++it) {
        const QBase q = gen.base();
        const Complex a = gen.param();
        const ScaledEval s = qpoch_infinite_scaled(a, q);
        const EvalResult r = qpoch_infinite(a, q);
        CHECK(rel_diff(s.value.to_complex(), r.value) < 1e-14);
    }
    // a scaled ratio that overflows binary64 still carries a usable exponent
    const QBase q(0.5);
    std::vector<Complex> nums;
    for (int i = 0; i < 40; ++i) nums.push_back(Complex(-1e9, 1.0));
    const ScaledEval big = qpoch_ratio_scaled(nums, {}, q);
    CHECK(big.value.log2_abs() > 1200.0);
    CHECK_THROWS_AS((void)big.value.to_complex(), Error);
}
