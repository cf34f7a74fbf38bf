#ifndef QBILATERAL_IDENTITIES_HPP
#define QBILATERAL_IDENTITIES_HPP

#include <string>
#include <vector>

#include "qbilateral/phi.hpp"
#include "qbilateral/qcore.hpp"
#include "qbilateral/types.hpp"

namespace qb {

/// Two-sided truncation controls for bilateral sums: a term must stay
/// below tol_abs for confirm_window consecutive indices with observed
/// decay ratio < 0.999 before a direction is cut off.
struct TruncationConfig {
    double tol_abs = 1e-12;
    int confirm_window = 5;
    int n_cap = 400;
};

/// sum_n phi(a;b;q;xq^n) t^n  =  closed-form product, for
/// max|a_i| < |t| < 1 and x off the positive real ray.
struct LemmaSpec {
    std::vector<Complex> a;  // length k+1
    std::vector<Complex> b;  // length k
    Complex x;
    Complex t;
    QBase q;
};

/// Full parameter set of the bilateral two-phi summation.
struct TheoremSpec {
    std::vector<Complex> a;  // length k+1
    std::vector<Complex> b;  // length k
    std::vector<Complex> c;  // length l+1
    std::vector<Complex> d;  // length l
    Complex x;
    Complex y;
    Complex t;
    QBase q;
};

/// l = 0 degeneration with bilateral weight (c;q)_n / (d;q)_n.
struct CorollarySpec {
    std::vector<Complex> a;  // length k+1
    std::vector<Complex> b;  // length k
    Complex x;
    Complex c;
    Complex d;
    Complex t;
    QBase q;
};

/// 2psi2(a,c; b,d; q, t) transformation parameters.
struct Psi2Spec {
    Complex a;
    Complex b;
    Complex c;
    Complex d;
    Complex t;
    QBase q;
};

enum class IdentityKind { lemma, theorem, corollary, psi2, swap_symmetry, proof_integral };

const char* identity_name(IdentityKind k);

enum class Verdict { pass, fail, skipped };

struct VerificationRecord {
    IdentityKind identity = IdentityKind::lemma;
    std::string params;  // serialized spec (JSON)
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double lhs_err = 0.0;
    double rhs_err = 0.0;
    Verdict verdict = Verdict::skipped;
    std::string reason;
    double wall_time_ms = 0.0;
};

// ---- domain validators (total functions, return the violation list) ----

std::vector<std::string> validate_domain(const LemmaSpec& spec);
std::vector<std::string> validate_domain(const TheoremSpec& spec);
std::vector<std::string> validate_domain(const CorollarySpec& spec);
std::vector<std::string> validate_domain(const Psi2Spec& spec);

/// Psi2 admissibility is inherited from the Corollary at k = 0 under
/// x -> a, a_1 -> b/a; this is the mapped spec the validator uses.
CorollarySpec psi2_as_corollary(const Psi2Spec& spec);

// ---- idem expansion ----

/// All k+1 orderings of the a-list obtained by interchanging the
/// distinguished first entry with each other entry (original first).
/// Throws DegenerateParameters when two entries coincide within 1e-8.
std::vector<std::vector<Complex>> idem_orderings(const std::vector<Complex>& a);

// ---- Lemma ----

EvalResult lemma_lhs(const LemmaSpec& spec, const TruncationConfig& trunc = {},
                     const QuadratureConfig& quad = {});
EvalResult lemma_rhs(const LemmaSpec& spec);

// ---- Theorem ----

EvalResult theorem_lhs(const TheoremSpec& spec, const TruncationConfig& trunc = {},
                       const QuadratureConfig& quad = {});
/// The printed right-hand side: leading phi term followed by the k+1
/// idem terms, in a-list order.
std::vector<EvalResult> theorem_rhs_terms(const TheoremSpec& spec, double tol = 1e-12);
EvalResult theorem_rhs(const TheoremSpec& spec, double tol = 1e-12);

/// Exchange (a,b,x) with (c,d,y); valid when the mirror convergence
/// condition |q x d_1..d_l| < |y c_1..c_{l+1}| holds.
TheoremSpec swap_sides(const TheoremSpec& spec);

// ---- Corollary ----

EvalResult corollary_lhs(const CorollarySpec& spec, const TruncationConfig& trunc = {},
                         const QuadratureConfig& quad = {});
std::vector<EvalResult> corollary_rhs_terms(const CorollarySpec& spec, double tol = 1e-12);
EvalResult corollary_rhs(const CorollarySpec& spec, double tol = 1e-12);

// ---- 2psi2 transformation ----

EvalResult psi2_lhs(const Psi2Spec& spec, const TruncationConfig& trunc = {});
EvalResult psi2_rhs(const Psi2Spec& spec, double tol = 1e-12);

// ---- proof-step oracle ----

/// Contour integral over |z| = t^{1/2} of f_k(z;a,b,x) f_l(conj z;c,d,y)/z,
/// with f evaluated through the closed-form product side. Requires real t
/// with max(|a_i|,|c_j|) < t^{1/2} < 1; equals the bilateral sum.
EvalResult proof_integral_oracle(const TheoremSpec& spec, const QuadratureConfig& quad = {});

}  // namespace qb

#endif
