#ifndef QBILATERAL_DETAIL_CONTOUR_HPP
#define QBILATERAL_DETAIL_CONTOUR_HPP

#include <cmath>
#include <vector>

#include "qbilateral/types.hpp"

namespace qb::detail {

struct ContourOut {
    ScaledComplex mean;      // (1/N) sum_j f(rho e^{2 pi i j / N})
    double abs_err_log2;     // log2 of the absolute error estimate on mean
    long work = 0;
};

/// Deterministic exponent-aligned summation in node-index order.
inline ScaledComplex sum_scaled(const std::vector<ScaledComplex>& v) {
    double maxlog = -std::numeric_limits<double>::infinity();
    for (const auto& x : v) maxlog = std::max(maxlog, x.log2_abs());
    if (!std::isfinite(maxlog)) return ScaledComplex();
    const long E = static_cast<long>(std::llround(maxlog));
    Complex s(0.0, 0.0);
    for (const auto& x : v) {
        const long sh = x.e - E;
        if (sh < -1100) continue;  // below double underflow, exact zero contribution
        s += Complex(std::ldexp(x.m.real(), static_cast<int>(sh)),
                     std::ldexp(x.m.imag(), static_cast<int>(sh)));
    }
    return ScaledComplex(s, E);
}

inline double diff_log2(const ScaledComplex& a, const ScaledComplex& b) {
    // log2 |a - b| via alignment to the larger exponent
    const double la = a.log2_abs(), lb = b.log2_abs();
    const double lm = std::max(la, lb);
    if (!std::isfinite(lm)) return -std::numeric_limits<double>::infinity();
    const long E = static_cast<long>(std::llround(lm));
    auto at = [&](const ScaledComplex& x) {
        const long sh = x.e - E;
        if (sh < -1100) return Complex(0.0, 0.0);
        return Complex(std::ldexp(x.m.real(), static_cast<int>(sh)),
                       std::ldexp(x.m.imag(), static_cast<int>(sh)));
    };
    const double d = std::abs(at(a) - at(b));
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log2(d) + static_cast<double>(E);
}

/// Trapezoidal mean of a periodic integrand over the circle |t| = rho,
/// with node doubling until two successive estimates agree within
/// quad-tol (relative) or the estimate is roundoff-limited. The error
/// estimate never drops below the cancellation floor eps * max|f|.
template <class F>
ContourOut contour_mean(F&& integrand, double rho, int min_nodes, int max_nodes, double tol) {
    int n = 8;
    while (n < min_nodes) n *= 2;

    const double two_pi = 2.0 * std::acos(-1.0);
    auto node = [&](int j, int N) {
        const double th = two_pi * static_cast<double>(j) / static_cast<double>(N);
        return Complex(rho * std::cos(th), rho * std::sin(th));
    };

    double max_node_log2 = -std::numeric_limits<double>::infinity();
    long work = 0;
    std::vector<ScaledComplex> vals(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        vals[static_cast<size_t>(j)] = integrand(node(j, n));
        max_node_log2 = std::max(max_node_log2, vals[static_cast<size_t>(j)].log2_abs());
        ++work;
    }
    auto mean_of = [&](const std::vector<ScaledComplex>& v) {
        ScaledComplex s = sum_scaled(v);
        // node counts are powers of two, so this division is exact
        s.e -= static_cast<long>(std::llround(std::log2(static_cast<double>(v.size()))));
        return s;
    };
    ScaledComplex prev = mean_of(vals);

    while (n < max_nodes) {
        const int n2 = n * 2;
        std::vector<ScaledComplex> next(static_cast<size_t>(n2));
        for (int j = 0; j < n; ++j) next[static_cast<size_t>(2 * j)] = vals[static_cast<size_t>(j)];
        for (int j = 0; j < n; ++j) {
            next[static_cast<size_t>(2 * j + 1)] = integrand(node(2 * j + 1, n2));
            max_node_log2 = std::max(max_node_log2, next[static_cast<size_t>(2 * j + 1)].log2_abs());
            ++work;
        }
        vals.swap(next);
        n = n2;
        const ScaledComplex cur = mean_of(vals);

        const double dlog = diff_log2(prev, cur);
        const double floor_log2 = max_node_log2 - 50.0;  // ~ eps * max|f|
        const double slog = cur.log2_abs();
        const bool rel_ok = std::isfinite(slog) && dlog <= std::log2(tol) + slog;
        const bool floor_ok = dlog <= floor_log2 + 3.0;
        if (rel_ok || floor_ok) {
            ContourOut out;
            out.mean = cur;
            out.abs_err_log2 = std::max(dlog, floor_log2);
            out.work = work;
            return out;
        }
        prev = cur;
    }
    throw NonConvergence("contour quadrature: max_nodes reached without agreement");
}

}  // namespace qb::detail

#endif
