// qbilateral command-line front end: `verify` runs a sampled verification
// suite and writes a machine-readable report; `eval` evaluates a single
// expression from JSON parameters.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbilateral/json_io.hpp"

namespace {

using qb::Complex;
using qb::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailures = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitSamplerExhausted = 3;
constexpr int kExitDomainError = 4;

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string report_to_csv(const qb::SuiteReport& report) {
    std::ostringstream os;
    os.precision(17);
    os << "index,identity,verdict,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,rel_diff,"
          "lhs_err,rhs_err,wall_time_ms,reason,params\n";
    for (size_t i = 0; i < report.records.size(); ++i) {
        const auto& r = report.records[i];
        os << i << ',' << qb::identity_name(r.identity) << ','
           << (r.verdict == qb::Verdict::pass ? "pass"
               : r.verdict == qb::Verdict::fail ? "fail" : "skipped")
           << ',' << r.lhs.real() << ',' << r.lhs.imag() << ',' << r.rhs.real() << ','
           << r.rhs.imag() << ',' << r.abs_diff << ',' << r.rel_diff << ',' << r.lhs_err << ','
           << r.rhs_err << ',' << r.wall_time_ms << ',' << csv_escape(r.reason) << ','
           << csv_escape(r.params) << '\n';
    }
    return os.str();
}

// write-then-rename so a crashed run never leaves a truncated report
void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f << content;
        if (!f.good()) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

/// --params accepts inline JSON or a path to a JSON file.
Json load_params(const std::string& arg) {
    std::string text = arg;
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
        std::ifstream f(arg, std::ios::binary);
        if (!f) throw std::runtime_error("cannot read params file: " + arg);
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    return Json::parse(text);
}

void require_domain(const std::vector<std::string>& violations) {
    if (violations.empty()) return;
    std::string msg = "domain violations:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw qb::DomainError(msg);
}

Json eval_to_json(const qb::EvalResult& r) {
    Json j;
    j["value"] = qb::complex_to_json(r.value);
    j["err_est"] = r.err_est;
    j["work"] = r.work;
    j["method"] = qb::method_name(r.method);
    return j;
}

qb::PhiSpec phi_spec_from_json(const Json& j) {
    qb::PhiSpec spec;
    if (!j.is_object() || !j.contains("a") || !j.contains("q") || !j.contains("z"))
        throw qb::DomainError("phi params require keys a, q, z (and optional b, tol, radius)");
    for (const Json& e : j.at("a")) spec.num.push_back(qb::complex_from_json(e));
    if (j.contains("b"))
        for (const Json& e : j.at("b")) spec.den.push_back(qb::complex_from_json(e));
    spec.q = qb::QBase(qb::complex_from_json(j.at("q")));
    spec.z = qb::complex_from_json(j.at("z"));
    return spec;
}

int cmd_eval(const std::string& expr, const std::string& params_arg) {
    Json p;
    try {
        p = load_params(params_arg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }

    try {
        qb::EvalResult result;
        if (expr == "phi") {
            result = qb::phi_series(phi_spec_from_json(p), p.value("tol", 1e-13));
        } else if (expr == "phi-cont") {
            qb::QuadratureConfig quad;
            quad.radius = p.value("radius", 0.0);
            result = qb::phi_continued(phi_spec_from_json(p), quad);
        } else if (expr == "qpoch") {
            if (!p.is_object() || !p.contains("a") || !p.contains("q"))
                throw qb::DomainError("qpoch params require keys a, q (and optional n)");
            const Complex a = qb::complex_from_json(p.at("a"));
            const qb::QBase q(qb::complex_from_json(p.at("q")));
            if (p.contains("n")) {
                result.value = qb::qpoch_finite(a, q, p.at("n").get<int>());
                result.err_est = 0.0;
                result.method = qb::Method::closed_form;
            } else {
                result = qb::qpoch_infinite(a, q);
            }
        } else if (expr == "lemma-lhs" || expr == "lemma-rhs") {
            const qb::LemmaSpec s = qb::lemma_spec_from_json(p);
            require_domain(qb::validate_domain(s));
            result = expr == "lemma-lhs" ? qb::lemma_lhs(s) : qb::lemma_rhs(s);
        } else if (expr == "theorem-lhs" || expr == "theorem-rhs") {
            const qb::TheoremSpec s = qb::theorem_spec_from_json(p);
            require_domain(qb::validate_domain(s));
            result = expr == "theorem-lhs" ? qb::theorem_lhs(s) : qb::theorem_rhs(s);
        } else if (expr == "corollary-lhs" || expr == "corollary-rhs") {
            const qb::CorollarySpec s = qb::corollary_spec_from_json(p);
            require_domain(qb::validate_domain(s));
            result = expr == "corollary-lhs" ? qb::corollary_lhs(s) : qb::corollary_rhs(s);
        } else if (expr == "psi2-lhs" || expr == "psi2-rhs") {
            const qb::Psi2Spec s = qb::psi2_spec_from_json(p);
            require_domain(qb::validate_domain(s));
            result = expr == "psi2-lhs" ? qb::psi2_lhs(s) : qb::psi2_rhs(s);
        } else if (expr == "laurent") {
            qb::GeneralProductSpec spec;
            if (!p.is_object() || !p.contains("q") || !p.contains("n"))
                throw qb::DomainError(
                    "laurent params require keys q, n (and alpha/gamma/beta/delta lists)");
            for (const char* key : {"alpha", "gamma", "beta", "delta"}) {
                if (!p.contains(key)) continue;
                std::vector<Complex> v;
                for (const Json& e : p.at(key)) v.push_back(qb::complex_from_json(e));
                if (key[0] == 'a') spec.alpha = std::move(v);
                else if (key[0] == 'g') spec.gamma = std::move(v);
                else if (key[0] == 'b') spec.beta = std::move(v);
                else spec.delta = std::move(v);
            }
            spec.q = qb::QBase(qb::complex_from_json(p.at("q")));
            qb::QuadratureConfig quad;
            quad.radius = p.value("radius", 0.0);
            result = qb::laurent_coeff(spec, p.at("n").get<int>(), quad);
        } else {
            std::cerr << "error: unknown expression: " << expr << "\n";
            return kExitBadInput;
        }
        std::cout << eval_to_json(result).dump() << "\n";
        return kExitOk;
    } catch (const qb::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed params: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}

struct VerifyArgs {
    std::string identity = "lemma";
    int k = 1;
    int l = 1;
    int trials = 10;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    std::vector<double> q_values;
    std::string config_path;
    std::string out_path;
    std::string format = "json";
};

int cmd_verify(const VerifyArgs& args) {
    qb::RunConfig cfg;
    try {
        if (!args.config_path.empty()) {
            std::ifstream f(args.config_path, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot read config file: " << args.config_path << "\n";
                return kExitBadInput;
            }
            Json j = Json::parse(f);
            cfg = qb::run_config_from_json(j);
        } else {
            cfg.sampler.identity = qb::parse_suite_identity(args.identity);
            cfg.sampler.k = args.k;
            cfg.sampler.l = args.l;
            cfg.sampler.trials = args.trials;
            cfg.sampler.seed = args.seed;
            cfg.tol = args.tol;
            if (!args.q_values.empty()) {
                cfg.sampler.q_values.clear();
                for (double q : args.q_values) cfg.sampler.q_values.emplace_back(q, 0.0);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }

    qb::SuiteReport report;
    try {
        report = qb::run_suite(cfg.sampler, cfg.tol, cfg.trunc);
    } catch (const qb::SamplerExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSamplerExhausted;
    } catch (const qb::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }

    const Json jreport = qb::to_json(report, cfg.tol);
    const std::string payload =
        args.format == "csv" ? report_to_csv(report) : jreport.dump(2) + "\n";
    try {
        if (!args.out_path.empty()) write_atomic(args.out_path, payload);
        else std::cout << payload;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    std::cerr << "pass=" << report.pass_count << " fail=" << report.fail_count
              << " skip=" << report.skip_count << "\n";
    return report.fail_count == 0 ? kExitOk : kExitFailures;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bilateral basic hypergeometric identity verifier"};
    app.require_subcommand(1);

    VerifyArgs vargs;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--identity", vargs.identity,
                       "lemma|theorem|corollary|psi2|swap|proof-integral|all");
    verify->add_option("--k", vargs.k, "upper parameter count minus one (a-side)");
    verify->add_option("--l", vargs.l, "upper parameter count minus one (c-side)");
    verify->add_option("--trials", vargs.trials, "number of sampled parameter sets");
    verify->add_option("--seed", vargs.seed, "sampler seed");
    verify->add_option("--tol", vargs.tol, "relative tolerance (default 1e-8)");
    verify->add_option("--q", vargs.q_values, "base value, repeatable");
    verify->add_option("--config", vargs.config_path, "JSON run config (overrides flags)");
    verify->add_option("--out", vargs.out_path, "report output path");
    verify->add_option("--format", vargs.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string expr, params = "{}";
    CLI::App* eval = app.add_subcommand("eval", "evaluate one expression");
    eval->add_option("--expr", expr,
                     "phi|phi-cont|qpoch|lemma-lhs|lemma-rhs|theorem-lhs|theorem-rhs|"
                     "corollary-lhs|corollary-rhs|psi2-lhs|psi2-rhs|laurent")
        ->required();
    eval->add_option("--params", params, "inline JSON or path to a JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitBadInput;
    }

    if (verify->parsed()) return cmd_verify(vargs);
    return cmd_eval(expr, params);
}
