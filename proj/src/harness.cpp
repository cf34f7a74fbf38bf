#include "qbilateral/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "qbilateral/json_io.hpp"

namespace qb {

const char* suite_identity_name(SuiteIdentity id) {
    switch (id) {
        case SuiteIdentity::lemma: return "lemma";
        case SuiteIdentity::theorem: return "theorem";
        case SuiteIdentity::corollary: return "corollary";
        case SuiteIdentity::psi2: return "psi2";
        case SuiteIdentity::swap_symmetry: return "swap";
        case SuiteIdentity::proof_integral: return "proof-integral";
        case SuiteIdentity::all: return "all";
    }
    return "?";
}

SuiteIdentity parse_suite_identity(const std::string& name) {
    for (SuiteIdentity id :
         {SuiteIdentity::lemma, SuiteIdentity::theorem, SuiteIdentity::corollary,
          SuiteIdentity::psi2, SuiteIdentity::swap_symmetry, SuiteIdentity::proof_integral,
          SuiteIdentity::all})
        if (name == suite_identity_name(id)) return id;
    throw DomainError("unknown identity: " + name);
}

namespace {

constexpr long kRejectionBudget = 10000;
constexpr double kPi = 3.14159265358979323846;

/// Deterministic draws independent of the standard library's
/// distribution implementations.
struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}

    double uniform() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
    double log_uniform(double lo, double hi) {
        return std::exp(std::log(lo) + uniform() * (std::log(hi) - std::log(lo)));
    }
    double angle_full() { return uniform() * 2.0 * kPi; }
    // argument in [pi/6, 11pi/6], clear of the positive real ray
    double angle_off_ray() { return kPi / 6.0 + uniform() * (10.0 * kPi / 6.0); }
};

Complex polar(double mag, double ang) { return Complex(mag * std::cos(ang), mag * std::sin(ang)); }

Complex draw_generic(Rng& r, const SamplerConfig& cfg) {
    return polar(r.log_uniform(cfg.magnitude_lo, cfg.magnitude_hi), r.angle_full());
}

Complex draw_off_ray(Rng& r, const SamplerConfig& cfg) {
    const double mag = r.log_uniform(cfg.magnitude_lo, cfg.magnitude_hi);
    if (cfg.angle_policy == AnglePolicy::real_negative_x) return Complex(-mag, 0.0);
    return polar(mag, r.angle_off_ray());
}

std::vector<Complex> draw_list(Rng& r, const SamplerConfig& cfg, int n) {
    std::vector<Complex> v;
    v.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v.push_back(draw_generic(r, cfg));
    return v;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    return seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(trial + 1);
}

LemmaSpec draw_lemma(Rng& r, const SamplerConfig& cfg, const QBase& q) {
    LemmaSpec s{draw_list(r, cfg, cfg.k + 1), draw_list(r, cfg, cfg.k), draw_off_ray(r, cfg),
                Complex(r.log_uniform(cfg.magnitude_lo, cfg.magnitude_hi), 0.0), q};
    return s;
}

TheoremSpec draw_theorem(Rng& r, const SamplerConfig& cfg, const QBase& q) {
    return TheoremSpec{draw_list(r, cfg, cfg.k + 1),
                       draw_list(r, cfg, cfg.k),
                       draw_list(r, cfg, cfg.l + 1),
                       draw_list(r, cfg, cfg.l),
                       draw_off_ray(r, cfg),
                       draw_off_ray(r, cfg),
                       Complex(r.log_uniform(cfg.magnitude_lo, cfg.magnitude_hi), 0.0),
                       q};
}

CorollarySpec draw_corollary(Rng& r, const SamplerConfig& cfg, const QBase& q) {
    return CorollarySpec{draw_list(r, cfg, cfg.k + 1),
                         draw_list(r, cfg, cfg.k),
                         draw_off_ray(r, cfg),
                         draw_generic(r, cfg),
                         draw_generic(r, cfg),
                         Complex(r.log_uniform(cfg.magnitude_lo, cfg.magnitude_hi), 0.0),
                         q};
}

Psi2Spec draw_psi2(Rng& r, const SamplerConfig& cfg, const QBase& q) {
    return Psi2Spec{draw_off_ray(r, cfg), draw_generic(r, cfg), draw_generic(r, cfg),
                    draw_generic(r, cfg),
                    Complex(r.log_uniform(cfg.magnitude_lo, cfg.magnitude_hi), 0.0), q};
}

bool mirror_condition_holds(const TheoremSpec& s) {
    Complex pc(1.0, 0.0), pd(1.0, 0.0);
    for (const Complex& c : s.c) pc *= c;
    for (const Complex& d : s.d) pd *= d;
    const double num = std::abs(s.q.q * s.x * pd);
    const double den = std::abs(s.y * pc);
    return den > 0.0 && num / den < 1.0 - 1e-6;
}

bool proof_condition_holds(const TheoremSpec& s) {
    if (std::abs(s.t.imag()) > 1e-12 || !(s.t.real() > 0.0)) return false;
    double maxac = 0.0;
    for (const Complex& a : s.a) maxac = std::max(maxac, std::abs(a));
    for (const Complex& c : s.c) maxac = std::max(maxac, std::abs(c));
    return maxac < std::sqrt(s.t.real()) - 1e-6;
}

Sample draw_sample(IdentityKind kind, Rng& r, const SamplerConfig& cfg, const QBase& q,
                   SampleStats* stats) {
    for (long attempt = 0; attempt < kRejectionBudget; ++attempt) {
        if (stats) ++stats->raw_draws;
        switch (kind) {
            case IdentityKind::lemma: {
                LemmaSpec s = draw_lemma(r, cfg, q);
                if (validate_domain(s).empty()) return Sample{kind, std::move(s)};
                break;
            }
            case IdentityKind::theorem: {
                TheoremSpec s = draw_theorem(r, cfg, q);
                if (validate_domain(s).empty()) return Sample{kind, std::move(s)};
                break;
            }
            case IdentityKind::corollary: {
                CorollarySpec s = draw_corollary(r, cfg, q);
                if (validate_domain(s).empty()) return Sample{kind, std::move(s)};
                break;
            }
            case IdentityKind::psi2: {
                Psi2Spec s = draw_psi2(r, cfg, q);
                if (validate_domain(s).empty()) return Sample{kind, std::move(s)};
                break;
            }
            case IdentityKind::swap_symmetry: {
                TheoremSpec s = draw_theorem(r, cfg, q);
                if (validate_domain(s).empty() && mirror_condition_holds(s) &&
                    validate_domain(swap_sides(s)).empty())
                    return Sample{kind, std::move(s)};
                break;
            }
            case IdentityKind::proof_integral: {
                TheoremSpec s = draw_theorem(r, cfg, q);
                if (validate_domain(s).empty() && proof_condition_holds(s))
                    return Sample{kind, std::move(s)};
                break;
            }
        }
    }
    throw SamplerExhausted("sample_params: rejection budget spent (over-constrained window?)");
}

IdentityKind kind_for_trial(SuiteIdentity id, int trial) {
    static const IdentityKind kAll[] = {IdentityKind::lemma,         IdentityKind::theorem,
                                        IdentityKind::corollary,     IdentityKind::psi2,
                                        IdentityKind::swap_symmetry, IdentityKind::proof_integral};
    switch (id) {
        case SuiteIdentity::lemma: return IdentityKind::lemma;
        case SuiteIdentity::theorem: return IdentityKind::theorem;
        case SuiteIdentity::corollary: return IdentityKind::corollary;
        case SuiteIdentity::psi2: return IdentityKind::psi2;
        case SuiteIdentity::swap_symmetry: return IdentityKind::swap_symmetry;
        case SuiteIdentity::proof_integral: return IdentityKind::proof_integral;
        case SuiteIdentity::all: return kAll[trial % 6];
    }
    return IdentityKind::lemma;
}

}  // namespace

std::vector<Sample> sample_params(const SamplerConfig& cfg, SampleStats* stats) {
    if (cfg.trials < 1) throw DomainError("SamplerConfig: trials >= 1 required");
    if (!(cfg.magnitude_lo > 0.0 && cfg.magnitude_hi < 1.0 && cfg.magnitude_lo <= cfg.magnitude_hi))
        throw DomainError("SamplerConfig: magnitude window must lie inside (0,1)");
    if (cfg.q_values.empty()) throw DomainError("SamplerConfig: q_values must be nonempty");

    std::vector<Sample> out;
    out.reserve(static_cast<size_t>(cfg.trials));
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng r(trial_seed(cfg.seed, trial));
        const QBase q(cfg.q_values[static_cast<size_t>(trial) % cfg.q_values.size()]);
        out.push_back(draw_sample(kind_for_trial(cfg.identity, trial), r, cfg, q, stats));
        if (stats) ++stats->accepted;
    }
    return out;
}

std::vector<TheoremSpec> sample_balanced_theorems(std::uint64_t seed, int trials,
                                                  const std::vector<Complex>& q_values) {
    SamplerConfig cfg;
    cfg.k = cfg.l = 1;
    std::vector<TheoremSpec> out;
    for (int trial = 0; trial < trials; ++trial) {
        Rng r(trial_seed(seed, trial));
        const QBase q(q_values[static_cast<size_t>(trial) % q_values.size()]);
        bool found = false;
        for (long attempt = 0; attempt < kRejectionBudget && !found; ++attempt) {
            const Complex a1 = draw_generic(r, cfg), a2 = draw_generic(r, cfg);
            const Complex c1 = draw_generic(r, cfg), c2 = draw_generic(r, cfg);
            const Complex b1 = draw_generic(r, cfg);
            const Complex d1 = a1 * a2 * c1 * c2 / b1;  // balance: a1 a2 c1 c2 = b1 d1
            const Complex x = draw_off_ray(r, cfg);
            const Complex y = d1 * x / (c1 * c2);  // d1 x = c1 c2 y
            const Complex t(r.log_uniform(cfg.magnitude_lo, cfg.magnitude_hi), 0.0);
            TheoremSpec s{{a1, a2}, {b1}, {c1, c2}, {d1}, x, y, t, q};
            if (validate_domain(s).empty()) {
                out.push_back(std::move(s));
                found = true;
            }
        }
        if (!found) throw SamplerExhausted("sample_balanced_theorems: rejection budget spent");
    }
    return out;
}

VerificationRecord verify_identity(const Sample& sample, double tol,
                                   const TruncationConfig& trunc) {
    VerificationRecord rec;
    rec.identity = sample.kind;
    rec.params = to_json(sample.spec).dump();
    const auto t0 = std::chrono::steady_clock::now();

    try {
        EvalResult lhs, rhs;
        const double series_tol = std::min(tol * 1e-4, 1e-12);
        switch (sample.kind) {
            case IdentityKind::lemma: {
                const auto& s = std::get<LemmaSpec>(sample.spec);
                lhs = lemma_lhs(s, trunc);
                rhs = lemma_rhs(s);
                break;
            }
            case IdentityKind::theorem: {
                const auto& s = std::get<TheoremSpec>(sample.spec);
                lhs = theorem_lhs(s, trunc);
                rhs = theorem_rhs(s, series_tol);
                break;
            }
            case IdentityKind::corollary: {
                const auto& s = std::get<CorollarySpec>(sample.spec);
                lhs = corollary_lhs(s, trunc);
                rhs = corollary_rhs(s, series_tol);
                break;
            }
            case IdentityKind::psi2: {
                const auto& s = std::get<Psi2Spec>(sample.spec);
                lhs = psi2_lhs(s, trunc);
                rhs = psi2_rhs(s, series_tol);
                break;
            }
            case IdentityKind::swap_symmetry: {
                const auto& s = std::get<TheoremSpec>(sample.spec);
                lhs = theorem_rhs(s, series_tol);
                rhs = theorem_rhs(swap_sides(s), series_tol);
                break;
            }
            case IdentityKind::proof_integral: {
                const auto& s = std::get<TheoremSpec>(sample.spec);
                lhs = proof_integral_oracle(s);
                rhs = theorem_rhs(s, series_tol);
                break;
            }
        }
        rec.lhs = lhs.value;
        rec.rhs = rhs.value;
        rec.abs_diff = std::abs(lhs.value - rhs.value);
        const double scale = std::max(1.0, std::abs(rhs.value));
        rec.rel_diff = rec.abs_diff / scale;
        rec.lhs_err = lhs.err_est;
        rec.rhs_err = rhs.err_est;
        const double max_err = std::max(lhs.err_est, rhs.err_est) / scale;
        const bool errs_ok = max_err < tol / 10.0;
        if (rec.rel_diff < tol) {
            // a pass additionally requires the error estimates to be well
            // under the tolerance, so agreement is not accidental
            rec.verdict = errs_ok ? Verdict::pass : Verdict::skipped;
            if (!errs_ok) rec.reason = "error estimate exceeds tol/10";
        } else if (rec.rel_diff * 10.0 >= max_err) {
            rec.verdict = Verdict::fail;
        } else {
            // the discrepancy is fully explained by the (conservative)
            // error estimate, so no conclusion about the identity follows
            rec.verdict = Verdict::skipped;
            rec.reason = "discrepancy within the error estimate";
        }
    } catch (const Error& e) {
        rec.verdict = Verdict::skipped;
        rec.reason = e.what();
    }

    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

SuiteReport run_suite(const SamplerConfig& cfg, double tol, const TruncationConfig& trunc) {
    const std::vector<Sample> samples = sample_params(cfg);
    SuiteReport report;
    report.records.resize(samples.size());
    report.config_echo = to_json(cfg).dump();

    unsigned threads = 1;
    if (const char* env = std::getenv("QBILATERAL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 1) threads = static_cast<unsigned>(v);
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(samples.size()));

    if (threads <= 1) {
        for (size_t i = 0; i < samples.size(); ++i)
            report.records[i] = verify_identity(samples[i], tol, trunc);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (unsigned tix = 0; tix < threads; ++tix)
            pool.emplace_back([&] {
                for (;;) {
                    const size_t i = next.fetch_add(1);
                    if (i >= samples.size()) return;
                    report.records[i] = verify_identity(samples[i], tol, trunc);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& r : report.records) {
        if (r.verdict == Verdict::pass) ++report.pass_count;
        else if (r.verdict == Verdict::fail) ++report.fail_count;
        else ++report.skip_count;
    }
    return report;
}

}  // namespace qb
