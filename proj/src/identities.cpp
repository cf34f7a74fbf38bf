#include "qbilateral/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "qbilateral/detail/contour.hpp"

namespace qb {

const char* identity_name(IdentityKind k) {
    switch (k) {
        case IdentityKind::lemma: return "lemma";
        case IdentityKind::theorem: return "theorem";
        case IdentityKind::corollary: return "corollary";
        case IdentityKind::psi2: return "psi2";
        case IdentityKind::swap_symmetry: return "swap";
        case IdentityKind::proof_integral: return "proof_integral";
    }
    return "?";
}

namespace {

constexpr double kRayBand = 1e-9;
constexpr double kAnnulusMargin = 1e-9;
constexpr double kDistinctMargin = 1e-8;
constexpr double kPrefactorBand = 1e-10;
constexpr double kArgumentMargin = 1e-6;  // |w| must stay below 1 by this

Complex product_of(const std::vector<Complex>& v) {
    Complex p(1.0, 0.0);
    for (const Complex& x : v) p *= x;
    return p;
}

double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const Complex& x : v) m = std::max(m, std::abs(x));
    return m;
}

void require_valid(const std::vector<std::string>& violations, const char* who) {
    if (violations.empty()) return;
    std::ostringstream os;
    os << who << ": domain violations:";
    for (const auto& v : violations) os << " [" << v << "]";
    throw DomainError(os.str());
}

void check_annulus(std::vector<std::string>& out, double inner, double tmag, const char* cond) {
    if (!(inner + kAnnulusMargin < tmag))
        out.push_back(std::string(cond) + " violated: inner bound >= |t|");
    if (!(tmag < 1.0 - kAnnulusMargin)) out.push_back(std::string(cond) + " violated: |t| >= 1");
}

void check_off_ray(std::vector<std::string>& out, Complex v, const char* name) {
    if (dist_to_positive_ray(v) <= kRayBand)
        out.push_back(std::string(name) + " within 1e-9 of the positive real ray");
}

void check_distinct(std::vector<std::string>& out, const std::vector<Complex>& a) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (std::abs(a[i] - a[j]) < kDistinctMargin) {
                out.push_back("a-list entries coincide within 1e-8");
                return;
            }
}

void check_prefactor_symbols(std::vector<std::string>& out, const std::vector<Complex>& symbols,
                             const QBase& q, const char* what) {
    for (const Complex& s : symbols)
        if (near_infinite_poch_zero(s, q, kPrefactorBand)) {
            out.push_back(std::string(what) + " denominator symbol within 1e-10 of q^{-m}");
            return;
        }
}

// Contour radius used when summing continued phi values over a geometric
// ladder of arguments x q^n. Pulling the contour toward max|a_i| keeps the
// cancellation growth of deep coefficients below the term decay rate
// `decay` (= |t| over the per-step term growth).
double bilateral_radius(double maxa, double decay) {
    if (maxa <= 0.0) return 0.0;  // phi picks its default
    const double rho = maxa * std::pow(std::max(decay, 1.0001), 0.3);
    const double lo = maxa + 0.02 * (1.0 - maxa);
    const double hi = std::sqrt(maxa);
    return std::clamp(rho, lo, hi);
}

EvalResult mul(const EvalResult& a, const EvalResult& b) {
    EvalResult r;
    r.value = a.value * b.value;
    r.err_est = std::abs(a.value) * b.err_est + std::abs(b.value) * a.err_est;
    r.work = a.work + b.work;
    r.method = Method::closed_form;
    return r;
}

/// Two-sided summation over n in Z. term(n) is called with n monotone
/// within each direction (0,1,2,... then -1,-2,...).
EvalResult bilateral_sum(const std::function<ScaledEval(long)>& term,
                         const TruncationConfig& trunc) {
    Complex sum(0.0, 0.0);
    double err = 0.0;
    long work = 0;
    for (int dir : {+1, -1}) {
        double prev_mag = -1.0;
        double ratio = 1.0;
        int consecutive = 0;
        long n = dir > 0 ? 0 : -1;
        for (;;) {
            const ScaledEval te = term(n);
            if (te.value.log2_abs() > 1000.0)
                throw NonConvergence("bilateral sum: term overflows binary64");
            const Complex tv = te.value.to_complex();
            sum += tv;
            const double mag = std::abs(tv);
            err += te.rel_err * mag;
            work += std::max(te.work, 1l);
            ratio = prev_mag > 0.0 ? mag / prev_mag : 1.0;
            prev_mag = mag;
            if (mag < trunc.tol_abs && ratio < 0.999)
                ++consecutive;
            else
                consecutive = 0;
            if (consecutive >= trunc.confirm_window) {
                err += mag * ratio / (1.0 - ratio);
                break;
            }
            n += dir;
            if (std::abs(n) > trunc.n_cap)
                throw NonConvergence("bilateral sum: n_cap reached before truncation fired");
        }
    }
    EvalResult r;
    r.value = sum;
    r.err_est = err;
    r.work = work;
    r.method = Method::series;
    return r;
}

// x q^n as a Complex, guarding against leaving double range.
Complex ladder_argument(Complex x, const QBase& q, long n) {
    ScaledComplex z = scaled_pow(q.q, n);
    z *= x;
    if (z.log2_abs() > 900.0)
        throw NonConvergence("bilateral sum: phi argument overflows before truncation");
    return z.to_complex();
}

}  // namespace

// ---------------------------------------------------------------- validators

std::vector<std::string> validate_domain(const LemmaSpec& spec) {
    std::vector<std::string> out;
    if (spec.a.size() != spec.b.size() + 1) out.push_back("need len(a) = len(b) + 1");
    check_annulus(out, max_abs(spec.a), std::abs(spec.t), "condition (a)");
    check_off_ray(out, spec.x, "x");
    return out;
}

std::vector<std::string> validate_domain(const TheoremSpec& spec) {
    std::vector<std::string> out;
    if (spec.a.size() != spec.b.size() + 1) out.push_back("need len(a) = len(b) + 1");
    if (spec.c.size() != spec.d.size() + 1) out.push_back("need len(c) = len(d) + 1");
    if (!out.empty()) return out;

    double acmax = 0.0;
    for (const Complex& a : spec.a)
        for (const Complex& c : spec.c) acmax = std::max(acmax, std::abs(a * c));
    check_annulus(out, acmax, std::abs(spec.t), "condition (acl)");

    const Complex xa = spec.x * product_of(spec.a);
    const Complex yb = spec.q.q * spec.y * product_of(spec.b);
    if (!(std::abs(yb) < std::abs(xa))) out.push_back("condition (acr) violated");
    if (std::abs(xa) > 0.0 && std::abs(yb) / std::abs(xa) > 1.0 - kArgumentMargin)
        out.push_back("series argument |w| within 1e-6 of 1");

    check_off_ray(out, spec.x, "x");
    check_off_ray(out, spec.y, "y");
    check_distinct(out, spec.a);
    for (const Complex& a : spec.a)
        if (std::abs(a) < 1e-10) out.push_back("a-list entry within 1e-10 of 0");

    // denominator symbols of the printed right-hand side
    std::vector<Complex> dens{spec.t, spec.x, spec.q.q / spec.x, spec.y, spec.q.q / spec.y};
    for (const Complex& a : spec.a) {
        dens.push_back(a / spec.t);
        dens.push_back(spec.t / a);
        dens.push_back(spec.q.q * a / spec.t);
        for (const Complex& a2 : spec.a)
            if (a2 != a) {
                dens.push_back(a2 / a);
                dens.push_back(spec.q.q * a / a2);
            }
        for (const Complex& c : spec.c) dens.push_back(a * c / spec.t);
        for (const Complex& d : spec.d) dens.push_back(a * d / spec.t);
    }
    for (const Complex& b : spec.b) dens.push_back(b);
    for (const Complex& d : spec.d) dens.push_back(d);
    check_prefactor_symbols(out, dens, spec.q, "theorem RHS");
    return out;
}

std::vector<std::string> validate_domain(const CorollarySpec& spec) {
    std::vector<std::string> out;
    if (spec.a.size() != spec.b.size() + 1) out.push_back("need len(a) = len(b) + 1");
    if (std::abs(spec.c) < 1e-12) {
        out.push_back("c within 1e-12 of 0");
        return out;
    }
    if (!out.empty()) return out;

    double inner = 0.0;
    for (const Complex& a : spec.a) inner = std::max(inner, std::abs(a * spec.d / spec.c));
    check_annulus(out, inner, std::abs(spec.t), "corollary condition");

    const Complex xa = spec.x * product_of(spec.a);
    const Complex cb = spec.q.q * spec.c * product_of(spec.b);
    if (!(std::abs(cb) < std::abs(xa))) out.push_back("corollary argument condition violated");
    if (std::abs(xa) > 0.0 && std::abs(cb) / std::abs(xa) > 1.0 - kArgumentMargin)
        out.push_back("series argument |w| within 1e-6 of 1");

    check_off_ray(out, spec.x, "x");
    check_distinct(out, spec.a);
    for (const Complex& a : spec.a)
        if (std::abs(a) < 1e-10) out.push_back("a-list entry within 1e-10 of 0");
    if (near_q_power(spec.c, spec.q, kDistinctMargin))
        out.push_back("c within 1e-8 of an integer power of q");
    if (near_q_power(spec.d, spec.q, kDistinctMargin))
        out.push_back("d within 1e-8 of an integer power of q");

    std::vector<Complex> dens{spec.t, spec.x, spec.q.q / spec.x, spec.q.q / spec.c, spec.d};
    for (const Complex& a : spec.a) {
        dens.push_back(a / spec.t);
        dens.push_back(spec.t / a);
        dens.push_back(spec.q.q * a / spec.t);
        dens.push_back(a * spec.d / (spec.c * spec.t));
        for (const Complex& a2 : spec.a)
            if (a2 != a) {
                dens.push_back(a2 / a);
                dens.push_back(spec.q.q * a / a2);
            }
    }
    for (const Complex& b : spec.b) dens.push_back(b);
    check_prefactor_symbols(out, dens, spec.q, "corollary RHS");
    return out;
}

CorollarySpec psi2_as_corollary(const Psi2Spec& spec) {
    if (std::abs(spec.a) < 1e-12) throw DomainError("psi2: a must be nonzero");
    return CorollarySpec{{spec.b / spec.a}, {}, spec.a, spec.c, spec.d, spec.t, spec.q};
}

std::vector<std::string> validate_domain(const Psi2Spec& spec) {
    std::vector<std::string> out;
    if (std::abs(spec.a) < 1e-12 || std::abs(spec.b) < 1e-12) {
        out.push_back("a and b must be nonzero");
        return out;
    }
    out = validate_domain(psi2_as_corollary(spec));
    if (std::abs(spec.q.q * spec.c / spec.b) > 1.0 - kArgumentMargin)
        out.push_back("RHS series argument |qc/b| within 1e-6 of 1");
    return out;
}

// ------------------------------------------------------------------- idem

std::vector<std::vector<Complex>> idem_orderings(const std::vector<Complex>& a) {
    if (a.empty()) throw DomainError("idem: empty parameter list");
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (std::abs(a[i] - a[j]) < kDistinctMargin)
                throw DegenerateParameters("idem: parameters coincide within 1e-8");
    std::vector<std::vector<Complex>> out;
    out.push_back(a);
    for (size_t i = 1; i < a.size(); ++i) {
        std::vector<Complex> swapped = a;
        std::swap(swapped[0], swapped[i]);
        out.push_back(std::move(swapped));
    }
    return out;
}

// ------------------------------------------------------------------ Lemma

EvalResult lemma_rhs(const LemmaSpec& spec) {
    std::vector<Complex> nums{spec.q.q};
    nums.insert(nums.end(), spec.a.begin(), spec.a.end());
    nums.push_back(spec.x * spec.t);
    nums.push_back(spec.q.q / (spec.x * spec.t));
    for (const Complex& b : spec.b) nums.push_back(b / spec.t);

    std::vector<Complex> dens{spec.x, spec.q.q / spec.x};
    for (const Complex& b : spec.b) dens.push_back(b);
    dens.push_back(spec.t);
    for (const Complex& a : spec.a) dens.push_back(a / spec.t);

    return qpoch_ratio(nums, dens, spec.q);
}

EvalResult lemma_lhs(const LemmaSpec& spec, const TruncationConfig& trunc,
                     const QuadratureConfig& quad) {
    require_valid(validate_domain(spec), "lemma_lhs");
    (void)quad;
    PhiLadder ladder(spec.a, spec.b, spec.q, spec.x);

    auto term = [&](long n) -> ScaledEval {
        ScaledEval f = ladder.at(n);
        f.value *= scaled_pow(spec.t, n);
        return f;
    };
    return bilateral_sum(term, trunc);
}

// ----------------------------------------------------------------- Theorem

std::vector<EvalResult> theorem_rhs_terms(const TheoremSpec& spec, double tol) {
    require_valid(validate_domain(spec), "theorem_rhs");
    const Complex q = spec.q.q;
    const Complex w = q * spec.y * product_of(spec.b) / (spec.x * product_of(spec.a));

    std::vector<EvalResult> terms;

    {  // leading term
        std::vector<Complex> nums{q, spec.x * spec.t, q / (spec.x * spec.t)};
        nums.insert(nums.end(), spec.a.begin(), spec.a.end());
        for (const Complex& b : spec.b) nums.push_back(b / spec.t);
        std::vector<Complex> dens{spec.t, spec.x, q / spec.x};
        for (const Complex& a : spec.a) dens.push_back(a / spec.t);
        dens.insert(dens.end(), spec.b.begin(), spec.b.end());

        PhiSpec phi{{}, {}, spec.q, w};
        phi.num.push_back(spec.t);
        for (const Complex& b : spec.b) phi.num.push_back(q * spec.t / b);
        phi.num.insert(phi.num.end(), spec.c.begin(), spec.c.end());
        for (const Complex& a : spec.a) phi.den.push_back(q * spec.t / a);
        phi.den.insert(phi.den.end(), spec.d.begin(), spec.d.end());

        terms.push_back(mul(qpoch_ratio(nums, dens, spec.q), phi_series(phi, tol)));
    }

    for (const auto& ordering : idem_orderings(spec.a)) {
        const Complex A = ordering[0];
        const std::vector<Complex> rest(ordering.begin() + 1, ordering.end());

        std::vector<Complex> nums{q,          A * spec.x,          q / (A * spec.x),
                                  spec.y * spec.t / A, q * A / (spec.y * spec.t)};
        nums.insert(nums.end(), rest.begin(), rest.end());
        for (const Complex& b : spec.b) nums.push_back(b / A);
        nums.insert(nums.end(), spec.c.begin(), spec.c.end());
        for (const Complex& d : spec.d) nums.push_back(A * d / spec.t);

        std::vector<Complex> dens{spec.x, q / spec.x, spec.y, q / spec.y, spec.t / A};
        for (const Complex& r : rest) dens.push_back(r / A);
        dens.insert(dens.end(), spec.b.begin(), spec.b.end());
        for (const Complex& c : spec.c) dens.push_back(A * c / spec.t);
        dens.insert(dens.end(), spec.d.begin(), spec.d.end());

        PhiSpec phi{{}, {}, spec.q, w};
        phi.num.push_back(A);
        for (const Complex& b : spec.b) phi.num.push_back(q * A / b);
        for (const Complex& c : spec.c) phi.num.push_back(A * c / spec.t);
        phi.den.push_back(q * A / spec.t);
        for (const Complex& r : rest) phi.den.push_back(q * A / r);
        for (const Complex& d : spec.d) phi.den.push_back(A * d / spec.t);

        terms.push_back(mul(qpoch_ratio(nums, dens, spec.q), phi_series(phi, tol)));
    }
    return terms;
}

EvalResult theorem_rhs(const TheoremSpec& spec, double tol) {
    EvalResult r;
    r.method = Method::series;
    for (const EvalResult& t : theorem_rhs_terms(spec, tol)) {
        r.value += t.value;
        r.err_est += t.err_est;
        r.work += t.work;
    }
    return r;
}

EvalResult theorem_lhs(const TheoremSpec& spec, const TruncationConfig& trunc,
                       const QuadratureConfig& quad) {
    require_valid(validate_domain(spec), "theorem_lhs");
    (void)quad;
    PhiLadder ladder_a(spec.a, spec.b, spec.q, spec.x);
    PhiLadder ladder_c(spec.c, spec.d, spec.q, spec.y);

    auto term = [&](long n) -> ScaledEval {
        const ScaledEval fa = ladder_a.at(n);
        const ScaledEval fc = ladder_c.at(n);
        ScaledEval out;
        out.value = fa.value * fc.value * scaled_pow(spec.t, n);
        out.rel_err = fa.rel_err + fc.rel_err;
        out.work = fa.work + fc.work;
        return out;
    };
    return bilateral_sum(term, trunc);
}

TheoremSpec swap_sides(const TheoremSpec& spec) {
    return TheoremSpec{spec.c, spec.d, spec.a, spec.b, spec.y, spec.x, spec.t, spec.q};
}

// --------------------------------------------------------------- Corollary

std::vector<EvalResult> corollary_rhs_terms(const CorollarySpec& spec, double tol) {
    require_valid(validate_domain(spec), "corollary_rhs");
    const Complex q = spec.q.q;
    const Complex w = q * spec.c * product_of(spec.b) / (spec.x * product_of(spec.a));

    std::vector<EvalResult> terms;

    {  // leading term
        std::vector<Complex> nums{q, spec.x * spec.t, q / (spec.x * spec.t), spec.c};
        nums.insert(nums.end(), spec.a.begin(), spec.a.end());
        for (const Complex& b : spec.b) nums.push_back(b / spec.t);
        std::vector<Complex> dens{spec.t, spec.x, q / spec.x, spec.d};
        for (const Complex& a : spec.a) dens.push_back(a / spec.t);
        dens.insert(dens.end(), spec.b.begin(), spec.b.end());

        PhiSpec phi{{}, {}, spec.q, w};
        phi.num.push_back(spec.t);
        phi.num.push_back(spec.d / spec.c);
        for (const Complex& b : spec.b) phi.num.push_back(q * spec.t / b);
        for (const Complex& a : spec.a) phi.den.push_back(q * spec.t / a);

        terms.push_back(mul(qpoch_ratio(nums, dens, spec.q), phi_series(phi, tol)));
    }

    for (const auto& ordering : idem_orderings(spec.a)) {
        const Complex A = ordering[0];
        const std::vector<Complex> rest(ordering.begin() + 1, ordering.end());

        std::vector<Complex> nums{q,
                                  spec.d / spec.c,
                                  A * spec.x,
                                  q / (A * spec.x),
                                  spec.c * spec.t / A,
                                  q * A / (spec.c * spec.t)};
        nums.insert(nums.end(), rest.begin(), rest.end());
        for (const Complex& b : spec.b) nums.push_back(b / A);

        std::vector<Complex> dens{spec.x,
                                  q / spec.x,
                                  q / spec.c,
                                  spec.d,
                                  A * spec.d / (spec.c * spec.t),
                                  spec.t / A};
        for (const Complex& r : rest) dens.push_back(r / A);
        dens.insert(dens.end(), spec.b.begin(), spec.b.end());

        PhiSpec phi{{}, {}, spec.q, w};
        phi.num.push_back(A);
        phi.num.push_back(A * spec.d / (spec.c * spec.t));
        for (const Complex& b : spec.b) phi.num.push_back(q * A / b);
        phi.den.push_back(q * A / spec.t);
        for (const Complex& r : rest) phi.den.push_back(q * A / r);

        terms.push_back(mul(qpoch_ratio(nums, dens, spec.q), phi_series(phi, tol)));
    }
    return terms;
}

EvalResult corollary_rhs(const CorollarySpec& spec, double tol) {
    EvalResult r;
    r.method = Method::series;
    for (const EvalResult& t : corollary_rhs_terms(spec, tol)) {
        r.value += t.value;
        r.err_est += t.err_est;
        r.work += t.work;
    }
    return r;
}

EvalResult corollary_lhs(const CorollarySpec& spec, const TruncationConfig& trunc,
                         const QuadratureConfig& quad) {
    require_valid(validate_domain(spec), "corollary_lhs");
    (void)quad;
    PhiLadder ladder(spec.a, spec.b, spec.q, spec.x);

    // bilateral weight (c;q)_n / (d;q)_n, advanced incrementally
    ScaledComplex w_pos = ScaledComplex::one();
    long n_pos = 0;
    Complex qp_pos(1.0, 0.0);  // q^{n_pos}
    ScaledComplex w_neg = ScaledComplex::one();
    long n_neg = 0;
    Complex invq_neg = spec.q.q;  // q^{1 - n_neg} for the next downward step

    auto weight_at = [&](long n) -> ScaledComplex {
        if (n >= 0) {
            while (n_pos < n) {
                const Complex den = Complex(1.0, 0.0) - spec.d * qp_pos;
                if (std::abs(den) < 1e-12)
                    throw PoleProximity("corollary weight: (d;q)_n factor near zero");
                w_pos *= (Complex(1.0, 0.0) - spec.c * qp_pos) / den;
                qp_pos *= spec.q.q;
                ++n_pos;
            }
            return w_pos;
        }
        while (n_neg > n) {
            // w_{m-1} = w_m (1 - d q^{m-1})/(1 - c q^{m-1}); with
            // invq = q^{1-m} this is (invq - d)/(invq - c)
            const Complex den = invq_neg - spec.c;
            if (std::abs(den) < 1e-12)
                throw PoleProximity("corollary weight: (c;q)_n factor near zero");
            w_neg *= (invq_neg - spec.d) / den;
            invq_neg *= spec.q.q;
            --n_neg;
        }
        return w_neg;
    };

    auto term = [&](long n) -> ScaledEval {
        ScaledEval f = ladder.at(n);
        f.value *= scaled_pow(spec.t, n);
        f.value *= weight_at(n);
        f.rel_err += static_cast<double>(std::abs(n)) * 5e-16;
        return f;
    };
    return bilateral_sum(term, trunc);
}

// ------------------------------------------------------------------- 2psi2

EvalResult psi2_lhs(const Psi2Spec& spec, const TruncationConfig& trunc) {
    require_valid(validate_domain(spec), "psi2_lhs");

    Complex term_pos(1.0, 0.0);
    long n_pos = 0;
    Complex qp_pos(1.0, 0.0);
    Complex term_neg(1.0, 0.0);
    long n_neg = 0;
    Complex invq_neg = spec.q.q;

    auto term = [&](long n) -> ScaledEval {
        Complex v;
        if (n >= 0) {
            while (n_pos < n) {
                const Complex den =
                    (Complex(1.0, 0.0) - spec.b * qp_pos) * (Complex(1.0, 0.0) - spec.d * qp_pos);
                if (std::abs(den) < 1e-12)
                    throw PoleProximity("psi2_lhs: denominator factor near zero");
                term_pos *= (Complex(1.0, 0.0) - spec.a * qp_pos) *
                            (Complex(1.0, 0.0) - spec.c * qp_pos) / den * spec.t;
                qp_pos *= spec.q.q;
                ++n_pos;
            }
            v = term_pos;
        } else {
            while (n_neg > n) {
                const Complex den = (invq_neg - spec.a) * (invq_neg - spec.c);
                if (std::abs(den) < 1e-12)
                    throw PoleProximity("psi2_lhs: denominator factor near zero");
                term_neg *= (invq_neg - spec.b) * (invq_neg - spec.d) / den / spec.t;
                invq_neg *= spec.q.q;
                --n_neg;
            }
            v = term_neg;
        }
        ScaledEval out;
        out.value = ScaledComplex::from(v);
        out.rel_err = static_cast<double>(std::abs(n)) * 5e-16;
        out.work = 1;
        return out;
    };
    return bilateral_sum(term, trunc);
}

EvalResult psi2_rhs(const Psi2Spec& spec, double tol) {
    require_valid(validate_domain(spec), "psi2_rhs");
    const Complex q = spec.q.q;
    const Complex a = spec.a, b = spec.b, c = spec.c, d = spec.d, t = spec.t;
    const Complex w = q * c / b;

    const EvalResult p1 =
        qpoch_ratio({q, b / a, c, a * t, q / (a * t)}, {q / a, b, d, t, b / (a * t)}, spec.q);
    const EvalResult f1 = phi_series(PhiSpec{{t, d / c}, {a * q * t / b}, spec.q, w}, tol);

    const EvalResult p2 = qpoch_ratio({q, q / b, d / c, a * c * t / b, q * b / (a * c * t)},
                                      {q / a, q / c, d, a * t / b, b * d / (a * c * t)}, spec.q);
    const EvalResult f2 =
        phi_series(PhiSpec{{b / a, b * d / (a * c * t)}, {q * b / (a * t)}, spec.q, w}, tol);

    const EvalResult t1 = mul(p1, f1);
    const EvalResult t2 = mul(p2, f2);
    EvalResult r;
    r.value = t1.value + t2.value;
    r.err_est = t1.err_est + t2.err_est;
    r.work = t1.work + t2.work;
    r.method = Method::series;
    return r;
}

// ------------------------------------------------------------ proof oracle

EvalResult proof_integral_oracle(const TheoremSpec& spec, const QuadratureConfig& quad) {
    if (std::abs(spec.t.imag()) > 1e-12 || !(spec.t.real() > 0.0 && spec.t.real() < 1.0))
        throw DomainError("proof_integral_oracle: t must be real in (0,1)");
    const double r = std::sqrt(spec.t.real());
    const double maxac = std::max(max_abs(spec.a), max_abs(spec.c));
    if (!(maxac < r - kAnnulusMargin))
        throw DomainError("proof_integral_oracle: condition (cc) fails");
    if (dist_to_positive_ray(spec.x) <= kRayBand || dist_to_positive_ray(spec.y) <= kRayBand)
        throw DomainError("proof_integral_oracle: x, y must avoid the positive real ray");
    // pole circles of the product-form integrand
    if (r - maxac < 1e-8 || 1.0 - r < 1e-8)
        throw ZeroDenominator("proof_integral_oracle: pole within 1e-8 of the contour");

    const Complex q = spec.q.q;
    // z-independent prefactors of the two product forms
    std::vector<Complex> ck_num{q};
    ck_num.insert(ck_num.end(), spec.a.begin(), spec.a.end());
    std::vector<Complex> ck_den{spec.x, q / spec.x};
    ck_den.insert(ck_den.end(), spec.b.begin(), spec.b.end());
    const ScaledEval Ck = qpoch_ratio_scaled(ck_num, ck_den, spec.q);

    std::vector<Complex> cl_num{q};
    cl_num.insert(cl_num.end(), spec.c.begin(), spec.c.end());
    std::vector<Complex> cl_den{spec.y, q / spec.y};
    cl_den.insert(cl_den.end(), spec.d.begin(), spec.d.end());
    const ScaledEval Cl = qpoch_ratio_scaled(cl_num, cl_den, spec.q);

    auto g = [&](Complex z, Complex arg, const std::vector<Complex>& up,
                 const std::vector<Complex>& dn) {
        std::vector<Complex> nums{arg * z, q / (arg * z)};
        for (const Complex& b : up) nums.push_back(b / z);
        std::vector<Complex> dens{z};
        for (const Complex& a : dn) dens.push_back(a / z);
        return qpoch_ratio_scaled(nums, dens, spec.q).value;
    };
    auto integrand = [&](Complex z) {
        return g(z, spec.x, spec.b, spec.a) * g(std::conj(z), spec.y, spec.d, spec.c);
    };
    const detail::ContourOut cm =
        detail::contour_mean(integrand, r, quad.min_nodes, quad.max_nodes, quad.tol);

    const ScaledComplex value = Ck.value * Cl.value * cm.mean;
    EvalResult out;
    out.value = value.to_complex();
    const double const_log2 = (Ck.value * Cl.value).log2_abs();
    out.err_est = std::exp2(std::min(cm.abs_err_log2 + const_log2, 900.0)) +
                  (Ck.rel_err + Cl.rel_err) * std::abs(out.value);
    out.work = cm.work;
    out.method = Method::quadrature;
    return out;
}

}  // namespace qb
