#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qbilateral/harness.hpp"

using namespace qb;

namespace {

SamplerConfig theorem_cfg(std::uint64_t seed, int trials) {
    SamplerConfig cfg;
    cfg.identity = SuiteIdentity::theorem;
    cfg.k = 1;
    cfg.l = 1;
    cfg.seed = seed;
    cfg.trials = trials;
    return cfg;
}

}  // namespace

TEST_CASE("suite identity names round-trip") {
    for (SuiteIdentity id :
         {SuiteIdentity::lemma, SuiteIdentity::theorem, SuiteIdentity::corollary,
          SuiteIdentity::psi2, SuiteIdentity::swap_symmetry, SuiteIdentity::proof_integral,
          SuiteIdentity::all})
        CHECK(parse_suite_identity(suite_identity_name(id)) == id);
    CHECK_THROWS_AS(parse_suite_identity("no-such-suite"), DomainError);
}

TEST_CASE("sampling is deterministic in the seed") {
    SamplerConfig cfg = theorem_cfg(77, 6);
    const auto a = sample_params(cfg);
    const auto b = sample_params(cfg);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        const auto& sa = std::get<TheoremSpec>(a[i].spec);
        const auto& sb = std::get<TheoremSpec>(b[i].spec);
        CHECK(sa.a == sb.a);
        CHECK(sa.b == sb.b);
        CHECK(sa.c == sb.c);
        CHECK(sa.d == sb.d);
        CHECK(sa.x == sb.x);
        CHECK(sa.y == sb.y);
        CHECK(sa.t == sb.t);
        CHECK(sa.q.q == sb.q.q);
    }
    cfg.seed = 78;
    const auto c = sample_params(cfg);
    CHECK(std::get<TheoremSpec>(a[0].spec).t != std::get<TheoremSpec>(c[0].spec).t);
}

TEST_CASE("suite runs are reproducible record by record") {
    SamplerConfig cfg;
    cfg.identity = SuiteIdentity::lemma;
    cfg.k = 1;
    cfg.seed = 5;
    cfg.trials = 8;
    const SuiteReport r1 = run_suite(cfg, 1e-8);
    const SuiteReport r2 = run_suite(cfg, 1e-8);
    REQUIRE(r1.records.size() == 8);
    REQUIRE(r2.records.size() == 8);
    for (size_t i = 0; i < 8; ++i) {
        const auto& a = r1.records[i];
        const auto& b = r2.records[i];
        CHECK(a.params == b.params);
        CHECK(a.lhs == b.lhs);
        CHECK(a.rhs == b.rhs);
        CHECK(a.rel_diff == b.rel_diff);
        CHECK(a.verdict == b.verdict);  // wall_time_ms may differ
    }
}

TEST_CASE("every accepted sample satisfies its domain validator") {
    for (SuiteIdentity id : {SuiteIdentity::lemma, SuiteIdentity::theorem,
                             SuiteIdentity::corollary, SuiteIdentity::psi2,
                             SuiteIdentity::swap_symmetry, SuiteIdentity::proof_integral}) {
        SamplerConfig cfg;
        cfg.identity = id;
        cfg.k = 1;
        cfg.l = 1;
        cfg.seed = 909;
        cfg.trials = 20;
        for (const Sample& s : sample_params(cfg)) {
            const auto violations = std::visit(
                [](const auto& spec) { return validate_domain(spec); }, s.spec);
            CHECK(violations.empty());
        }
    }
}

TEST_CASE("identity = all cycles through the six kinds") {
    SamplerConfig cfg;
    cfg.identity = SuiteIdentity::all;
    cfg.k = 1;
    cfg.l = 1;
    cfg.seed = 404;
    cfg.trials = 12;
    std::map<IdentityKind, int> seen;
    for (const Sample& s : sample_params(cfg)) ++seen[s.kind];
    CHECK(seen.size() == 6);
    for (const auto& [kind, count] : seen) CHECK(count == 2);
}

TEST_CASE("q cycles through the configured bases") {
    SamplerConfig cfg;
    cfg.identity = SuiteIdentity::lemma;
    cfg.k = 0;
    cfg.seed = 11;
    cfg.trials = 4;
    cfg.q_values = {Complex(0.3, 0.0), Complex(0.5, 0.0)};
    const auto samples = sample_params(cfg);
    CHECK(std::get<LemmaSpec>(samples[0].spec).q.q == Complex(0.3, 0.0));
    CHECK(std::get<LemmaSpec>(samples[1].spec).q.q == Complex(0.5, 0.0));
    CHECK(std::get<LemmaSpec>(samples[2].spec).q.q == Complex(0.3, 0.0));
}

TEST_CASE("rejection rate for the k = l = 1 theorem sampler is stable") {
    SampleStats stats;
    sample_params(theorem_cfg(12345, 200), &stats);
    CHECK(stats.accepted == 200);
    const double rate = static_cast<double>(stats.accepted) / static_cast<double>(stats.raw_draws);
    // measured 0.219 for this seed; pin to +-10% to catch sampler drift
    CHECK(rate > 0.197);
    CHECK(rate < 0.241);
}

TEST_CASE("sampler config validation") {
    SamplerConfig cfg = theorem_cfg(1, 0);
    CHECK_THROWS_AS((void)sample_params(cfg), DomainError);  // trials < 1
    cfg = theorem_cfg(1, 1);
    cfg.q_values.clear();
    CHECK_THROWS_AS((void)sample_params(cfg), DomainError);
    cfg = theorem_cfg(1, 1);
    cfg.magnitude_lo = 0.7;
    cfg.magnitude_hi = 0.2;
    CHECK_THROWS_AS((void)sample_params(cfg), DomainError);
}

TEST_CASE("an unsatisfiable window exhausts the rejection budget") {
    SamplerConfig cfg;
    cfg.identity = SuiteIdentity::corollary;
    cfg.k = 0;
    cfg.seed = 3;
    cfg.trials = 1;
    // |q c| < |x a_1| cannot hold when every magnitude sits near 0.05
    cfg.magnitude_lo = 0.05;
    cfg.magnitude_hi = 0.06;
    cfg.q_values = {Complex(0.5, 0.0)};
    CHECK_THROWS_AS((void)sample_params(cfg), SamplerExhausted);
}

TEST_CASE("verify_identity: domain violations become skips, not throws") {
    LemmaSpec bad{{Complex(0.2, 0.0), Complex(0.3, 0.0)},
                  {Complex(0.5, 0.0)},
                  Complex(-1.0, 0.0),
                  Complex(0.25, 0.0),  // violates max|a_i| < |t|
                  QBase(0.3)};
    const Sample s{IdentityKind::lemma, bad};
    const VerificationRecord rec = verify_identity(s, 1e-8);
    CHECK(rec.verdict == Verdict::skipped);
    CHECK_FALSE(rec.reason.empty());
}

TEST_CASE("verify_identity: an unreachable tolerance fails honestly") {
    SamplerConfig cfg = theorem_cfg(1000, 1);
    TruncationConfig trunc;
    trunc.n_cap = 20000;
    const VerificationRecord rec = verify_identity(sample_params(cfg)[0], 1e-15, trunc);
    CHECK(rec.verdict == Verdict::fail);
    CHECK(rec.rel_diff >= 1e-15);
    // the same sample passes at a tolerance its error estimates support
    const VerificationRecord ok = verify_identity(sample_params(cfg)[0], 1e-7, trunc);
    CHECK(ok.verdict == Verdict::pass);
}

TEST_CASE("run_suite counts are consistent and the suite passes") {
    TruncationConfig trunc;
    trunc.n_cap = 20000;
    const SuiteReport rep = run_suite(theorem_cfg(202, 10), 1e-7, trunc);
    CHECK(rep.records.size() == 10);
    CHECK(rep.pass_count + rep.fail_count + rep.skip_count == 10);
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : rep.records) {
        if (r.verdict == Verdict::pass) ++pass;
        else if (r.verdict == Verdict::fail) ++fail;
        else ++skip;
    }
    CHECK(pass == rep.pass_count);
    CHECK(fail == rep.fail_count);
    CHECK(skip == rep.skip_count);
    CHECK(rep.fail_count == 0);
    CHECK(rep.pass_count >= 9);
    CHECK_FALSE(rep.config_echo.empty());
}

TEST_CASE("balanced theorem samples verify like generic ones") {
    TruncationConfig trunc;
    trunc.n_cap = 20000;
    const auto specs =
        sample_balanced_theorems(55, 5, {Complex(0.3, 0.0), Complex(0.5, 0.0)});
    REQUIRE(specs.size() == 5);
    for (const TheoremSpec& s : specs) {
        CHECK(validate_domain(s).empty());
        const Sample sample{IdentityKind::theorem, s};
        const VerificationRecord rec = verify_identity(sample, 1e-7, trunc);
        CHECK(rec.verdict == Verdict::pass);
    }
}
