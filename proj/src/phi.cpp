#include "qbilateral/phi.hpp"

#include <algorithm>
#include <cmath>

#include "qbilateral/detail/contour.hpp"

namespace qb {

namespace {

constexpr double kCutBand = 1e-9;
constexpr double kDenPoleBand = 1e-10;
constexpr int kMaxSeriesTerms = 100000;

void check_shape(const PhiSpec& spec) {
    if (spec.num.size() != spec.den.size() + 1)
        throw DomainError("PhiSpec: need len(num) = len(den) + 1");
    for (const Complex& b : spec.den)
        if (near_infinite_poch_zero(b, spec.q, kDenPoleBand))
            throw PoleProximity("PhiSpec: denominator parameter within 1e-10 of q^{-m}");
}

ScaledEval as_scaled(const EvalResult& r) {
    ScaledEval s;
    s.value = ScaledComplex::from(r.value);
    const double av = std::abs(r.value);
    s.rel_err = av > 0.0 ? r.err_est / av : r.err_est;
    s.work = r.work;
    s.method = r.method;
    return s;
}

}  // namespace

double default_phi_radius(const std::vector<Complex>& num) {
    double maxa = 0.0;
    for (const Complex& a : num) maxa = std::max(maxa, std::abs(a));
    if (maxa > 0.0 && maxa < 1.0) return std::sqrt(maxa);
    return 0.5;
}

EvalResult phi_series(const PhiSpec& spec, double tol) {
    check_shape(spec);
    if (std::abs(spec.z) >= 1.0 - kCutBand)
        throw DomainError("phi_series: requires |z| < 1");
    EvalResult out;
    out.method = Method::series;
    if (spec.z == Complex(0.0, 0.0)) {
        out.value = 1.0;
        out.work = 1;
        return out;
    }

    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    Complex qj(1.0, 0.0);   // q^j
    Complex qj1 = spec.q.q;  // q^{j+1}
    double prev_mag = 1.0;
    double ratio = 0.0;
    int consecutive = 0;
    long j = 0;
    for (; j < kMaxSeriesTerms; ++j) {
        Complex numf = spec.z;
        for (const Complex& a : spec.num) numf *= Complex(1.0, 0.0) - a * qj;
        Complex denf = Complex(1.0, 0.0) - qj1;
        for (const Complex& b : spec.den) {
            const Complex f = Complex(1.0, 0.0) - b * qj;
            if (std::abs(f) < 1e-12)
                throw PoleProximity("phi_series: coefficient denominator within 1e-12 of zero");
            denf *= f;
        }
        term *= numf / denf;
        sum += term;
        qj = qj1;
        qj1 *= spec.q.q;

        const double mag = std::abs(term);
        ratio = prev_mag > 0.0 ? mag / prev_mag : 0.0;
        prev_mag = mag;
        if (mag < tol * std::abs(sum) && ratio < 1.0)
            ++consecutive;
        else
            consecutive = 0;
        if (consecutive >= 5) break;
    }
    if (j == kMaxSeriesTerms) throw NonConvergence("phi_series: term budget exhausted");

    out.value = sum;
    out.err_est = ratio < 1.0 ? prev_mag * ratio / (1.0 - ratio) : prev_mag;
    out.work = j + 1;
    return out;
}

ScaledEval phi_quadrature_scaled(const PhiSpec& spec, const QuadratureConfig& quad) {
    check_shape(spec);
    if (dist_to_cut(spec.z) <= kCutBand)
        throw DomainError("phi continuation: z within 1e-9 of the cut [1,inf)");
    if (std::abs(spec.z) < 1e-6)
        throw DomainError("phi quadrature: z too close to 0");
    double maxa = 0.0;
    for (const Complex& a : spec.num) maxa = std::max(maxa, std::abs(a));
    if (maxa >= 1.0 - kCutBand)
        throw DomainError("phi continuation: requires max|a_i| < 1");

    const double rho = quad.radius > 0.0 ? quad.radius : default_phi_radius(spec.num);
    if (!(rho > maxa && rho < 1.0))
        throw DomainError("phi continuation: contour radius outside (max|a_i|, 1)");

    const Complex x = spec.z;
    std::vector<Complex> pre_num{spec.q.q};
    pre_num.insert(pre_num.end(), spec.num.begin(), spec.num.end());
    std::vector<Complex> pre_den{x, spec.q.q / x};
    pre_den.insert(pre_den.end(), spec.den.begin(), spec.den.end());
    const ScaledEval pref = qpoch_ratio_scaled(pre_num, pre_den, spec.q);

    auto integrand = [&](Complex t) {
        std::vector<Complex> nums{x * t, spec.q.q / (x * t)};
        for (const Complex& b : spec.den) nums.push_back(b / t);
        std::vector<Complex> dens{t};
        for (const Complex& a : spec.num) dens.push_back(a / t);
        return qpoch_ratio_scaled(nums, dens, spec.q).value;
    };
    const detail::ContourOut c =
        detail::contour_mean(integrand, rho, quad.min_nodes, quad.max_nodes, quad.tol);

    ScaledEval out;
    out.value = pref.value * c.mean;
    const double mlog = c.mean.log2_abs();
    const double quad_rel =
        std::exp2(std::min(c.abs_err_log2 - std::max(mlog, c.abs_err_log2), 60.0));
    out.rel_err = pref.rel_err + quad_rel;
    out.work = c.work;
    out.method = Method::quadrature;
    return out;
}

ScaledEval phi_continued_scaled(const PhiSpec& spec, const QuadratureConfig& quad) {
    if (dist_to_cut(spec.z) <= kCutBand)
        throw DomainError("phi continuation: z within 1e-9 of the cut [1,inf)");
    if (std::abs(spec.z) < 1.0 - kCutBand) return as_scaled(phi_series(spec, quad.tol));
    return phi_quadrature_scaled(spec, quad);
}

EvalResult phi_quadrature(const PhiSpec& spec, const QuadratureConfig& quad) {
    const ScaledEval s = phi_quadrature_scaled(spec, quad);
    EvalResult r;
    r.value = s.value.to_complex();
    r.err_est = s.rel_err * std::abs(r.value);
    r.work = s.work;
    r.method = Method::quadrature;
    return r;
}

EvalResult phi_continued(const PhiSpec& spec, const QuadratureConfig& quad) {
    if (dist_to_cut(spec.z) <= kCutBand)
        throw DomainError("phi continuation: z within 1e-9 of the cut [1,inf)");
    if (std::abs(spec.z) < 1.0 - kCutBand) return phi_series(spec, quad.tol);
    return phi_quadrature(spec, quad);
}

namespace {

// coefficients of prod_i (1 - r_i X), lowest degree first
std::vector<Complex> poly_from_roots(const std::vector<Complex>& r) {
    std::vector<Complex> p{Complex(1.0, 0.0)};
    for (const Complex& root : r) {
        p.push_back(Complex(0.0, 0.0));
        for (size_t i = p.size() - 1; i > 0; --i) p[i] -= root * p[i - 1];
    }
    return p;
}

}  // namespace

PhiLadder::PhiLadder(std::vector<Complex> num, std::vector<Complex> den, QBase q, Complex x,
                     double seed_tol)
    : num_(std::move(num)), den_(std::move(den)), q_(q), x_(x), seed_tol_(seed_tol) {
    PhiSpec shape{num_, den_, q_, Complex(0.0, 0.0)};
    check_shape(shape);
    if (x_ == Complex(0.0, 0.0)) throw DomainError("PhiLadder: x must be nonzero");
    p_ = static_cast<int>(num_.size());

    std::vector<Complex> b_roots{q_.q};
    b_roots.insert(b_roots.end(), den_.begin(), den_.end());
    const std::vector<Complex> A = poly_from_roots(b_roots);
    B_ = poly_from_roots(num_);
    c_.resize(A.size());
    Complex qs(1.0, 0.0);
    for (size_t s = 0; s < A.size(); ++s) {
        c_[s] = A[s] / qs;
        qs *= q_.q;
    }
    // Note sum_s A_s q^{-s} = A(1/q) = 0 identically (q is a root of A),
    // so the recursion is homogeneous; forming that sum numerically would
    // inject a spurious q^m-decaying forcing that swamps the true values
    // once they fall below ~1e-16 of the seeds.

    // anchor so every series seed has argument magnitude below 0.9
    const double ax = std::abs(x_);
    const double aq = q_.abs();
    anchor_ = 0;
    for (double m = ax; m >= 0.9; m *= aq) ++anchor_;

    for (int i = 0; i < p_; ++i) {
        const long n = anchor_ + p_ - 1 - i;
        PhiSpec seed{num_, den_, q_, x_ * scaled_pow(q_.q, n).to_complex()};
        const EvalResult r = phi_series(seed, seed_tol_);
        vals_.push_back(ScaledComplex::from(r.value));
        const double av = std::abs(r.value);
        rel_errs_.push_back(av > 0.0 ? r.err_est / av : 1.0);
        work_ += r.work;
    }
}

void PhiLadder::extend_down(long n) {
    // deepest stored index is anchor_ + p_ - vals_.size()
    while (anchor_ + p_ - static_cast<long>(vals_.size()) > n) {
        const long m = anchor_ + p_ - static_cast<long>(vals_.size()) - 1;  // next to fill
        const ScaledComplex zs = scaled_pow(q_.q, m) * x_;
        Complex inv_z(0.0, 0.0);
        if (zs.log2_abs() > -1000.0) inv_z = (ScaledComplex::one() / zs).to_complex();
        const Complex denom = inv_z - Complex(1.0, 0.0);
        if (std::abs(denom) < 1e-12)
            throw PoleProximity("PhiLadder: ladder argument within 1e-12 of z = 1");

        std::vector<ScaledComplex> terms;
        for (int s = 1; s <= p_; ++s) {
            const Complex coef = c_[static_cast<size_t>(s)] * inv_z - B_[static_cast<size_t>(s)];
            const size_t i = vals_.size() - static_cast<size_t>(s);
            terms.push_back(vals_[i] * (-coef));
        }
        double max_term_log2 = -std::numeric_limits<double>::infinity();
        for (const ScaledComplex& t : terms) max_term_log2 = std::max(max_term_log2, t.log2_abs());
        ScaledComplex v = detail::sum_scaled(terms);
        v *= Complex(1.0, 0.0) / denom;

        // Error model: input errors ride the same stable recursion (every
        // homogeneous mode decays at an a_i rate, like the value itself),
        // so relative error carries over; each step adds roundoff amplified
        // by the local cancellation kappa = max summand / result.
        const double lv = v.log2_abs();
        double rel;
        if (v.is_zero() || !std::isfinite(lv)) {
            rel = 1e300;
        } else {
            double rel_in = 0.0;
            for (int s = 1; s <= p_; ++s)
                rel_in = std::max(rel_in, rel_errs_[vals_.size() - static_cast<size_t>(s)]);
            const double kappa =
                std::exp2(std::min(max_term_log2 - lv - std::log2(std::abs(denom)), 100.0));
            rel = rel_in + std::max(kappa, 1.0) * static_cast<double>(p_) * 4e-16;
        }
        vals_.push_back(v);
        rel_errs_.push_back(rel);
        work_ += p_;
    }
}

ScaledEval PhiLadder::at(long n) {
    ScaledEval out;
    if (n >= anchor_) {
        PhiSpec spec{num_, den_, q_, x_ * scaled_pow(q_.q, n).to_complex()};
        const EvalResult r = phi_series(spec, seed_tol_);
        out.value = ScaledComplex::from(r.value);
        const double av = std::abs(r.value);
        out.rel_err = av > 0.0 ? r.err_est / av : r.err_est;
        out.work = r.work;
        out.method = Method::series;
        return out;
    }
    const long deepest = anchor_ + p_ - static_cast<long>(vals_.size());
    if (n < deepest) extend_down(n);
    const size_t i = static_cast<size_t>(anchor_ + p_ - 1 - n);
    out.value = vals_[i];
    out.rel_err = rel_errs_[i];
    out.work = work_;
    out.method = Method::series;
    return out;
}

EvalResult laurent_coeff(const GeneralProductSpec& spec, int n, const QuadratureConfig& quad) {
    double dmax = 0.0;
    for (const Complex& d : spec.delta) dmax = std::max(dmax, std::abs(d));
    double gmin = std::numeric_limits<double>::infinity();
    for (const Complex& g : spec.gamma) {
        const double ag = std::abs(g);
        if (ag > 0.0) gmin = std::min(gmin, 1.0 / ag);
    }
    if (!(dmax < gmin)) throw DomainError("laurent_coeff: empty annulus");

    double rho = quad.radius;
    if (rho <= 0.0) rho = std::sqrt(std::max(dmax, 1e-6) * std::min(gmin, 1.0));
    if (!(rho > dmax && rho < gmin))
        throw DomainError("laurent_coeff: contour radius outside the annulus");

    auto integrand = [&](Complex t) {
        std::vector<Complex> nums;
        std::vector<Complex> dens;
        for (const Complex& a : spec.alpha) nums.push_back(a * t);
        for (const Complex& b : spec.beta) nums.push_back(b / t);
        for (const Complex& g : spec.gamma) dens.push_back(g * t);
        for (const Complex& d : spec.delta) dens.push_back(d / t);
        ScaledComplex v = qpoch_ratio_scaled(nums, dens, spec.q).value;
        v *= scaled_pow(t, -static_cast<long>(n));
        return v;
    };
    const detail::ContourOut c =
        detail::contour_mean(integrand, rho, quad.min_nodes, quad.max_nodes, quad.tol);

    EvalResult r;
    r.value = c.mean.to_complex();
    r.err_est = std::exp2(std::min(c.abs_err_log2, 900.0));
    r.work = c.work;
    r.method = Method::quadrature;
    return r;
}

}  // namespace qb
