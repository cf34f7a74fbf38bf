#ifndef QBILATERAL_HARNESS_HPP
#define QBILATERAL_HARNESS_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qbilateral/identities.hpp"

namespace qb {

enum class SuiteIdentity { lemma, theorem, corollary, psi2, swap_symmetry, proof_integral, all };

const char* suite_identity_name(SuiteIdentity id);
SuiteIdentity parse_suite_identity(const std::string& name);  // throws DomainError

enum class AnglePolicy { real_negative_x, generic_complex };

struct SamplerConfig {
    SuiteIdentity identity = SuiteIdentity::lemma;
    int k = 1;
    int l = 1;
    std::uint64_t seed = 0;
    std::vector<Complex> q_values{Complex(0.3, 0.0), Complex(0.5, 0.0)};
    int trials = 10;
    double magnitude_lo = 0.05;
    double magnitude_hi = 0.8;
    AnglePolicy angle_policy = AnglePolicy::generic_complex;
};

using SpecVariant = std::variant<LemmaSpec, TheoremSpec, CorollarySpec, Psi2Spec>;

struct Sample {
    IdentityKind kind = IdentityKind::lemma;
    SpecVariant spec;
};

struct SampleStats {
    long raw_draws = 0;
    long accepted = 0;
};

/// Deterministic rejection sampler: magnitudes log-uniform in the window,
/// x and y with argument in [pi/6, 11pi/6]; draws are rejected until
/// validate_domain passes (budget 1e4 per spec).
std::vector<Sample> sample_params(const SamplerConfig& cfg, SampleStats* stats = nullptr);

/// k = l = 1 theorem specs constructed on the balanced manifold
/// a1 a2 c1 c2 = b1 d1, d1 x = c1 c2 y.
std::vector<TheoremSpec> sample_balanced_theorems(std::uint64_t seed, int trials,
                                                  const std::vector<Complex>& q_values);

/// Evaluate the matched LHS/RHS pair for one sample. Total: numerical
/// failures become verdict = skipped with the reason recorded.
VerificationRecord verify_identity(const Sample& sample, double tol,
                                   const TruncationConfig& trunc = {});

struct SuiteReport {
    std::vector<VerificationRecord> records;
    int pass_count = 0;
    int fail_count = 0;
    int skip_count = 0;
    std::string config_echo;  // serialized SamplerConfig
};

/// Map verify_identity over sample_params. Honors QBILATERAL_THREADS
/// (records are keyed by trial index, so output is order-independent).
SuiteReport run_suite(const SamplerConfig& cfg, double tol, const TruncationConfig& trunc = {});

}  // namespace qb

#endif
