#include "qbilateral/json_io.hpp"

#include <set>

namespace qb {

namespace {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::skipped: return "skipped";
    }
    return "?";
}

Json complex_list_to_json(const std::vector<Complex>& v) {
    Json a = Json::array();
    for (const Complex& z : v) a.push_back(complex_to_json(z));
    return a;
}

std::vector<Complex> complex_list_from_json(const Json& j, const std::string& key) {
    if (!j.is_array()) throw DomainError("expected array for key '" + key + "'");
    std::vector<Complex> v;
    for (const Json& e : j) v.push_back(complex_from_json(e));
    return v;
}

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw DomainError("unknown key '" + it.key() + "' in " + where);
}

}  // namespace

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_object() && j.contains("re")) {
        const double re = j.at("re").get<double>();
        const double im = j.value("im", 0.0);
        reject_unknown_keys(j, {"re", "im"}, "complex value");
        return Complex(re, im);
    }
    throw DomainError("expected a number or {re, im} object for a complex value");
}

Json to_json(const LemmaSpec& s) {
    return Json{{"a", complex_list_to_json(s.a)}, {"b", complex_list_to_json(s.b)},
                {"x", complex_to_json(s.x)},      {"t", complex_to_json(s.t)},
                {"q", complex_to_json(s.q.q)}};
}

Json to_json(const TheoremSpec& s) {
    return Json{{"a", complex_list_to_json(s.a)}, {"b", complex_list_to_json(s.b)},
                {"c", complex_list_to_json(s.c)}, {"d", complex_list_to_json(s.d)},
                {"x", complex_to_json(s.x)},      {"y", complex_to_json(s.y)},
                {"t", complex_to_json(s.t)},      {"q", complex_to_json(s.q.q)}};
}

Json to_json(const CorollarySpec& s) {
    return Json{{"a", complex_list_to_json(s.a)}, {"b", complex_list_to_json(s.b)},
                {"x", complex_to_json(s.x)},      {"c", complex_to_json(s.c)},
                {"d", complex_to_json(s.d)},      {"t", complex_to_json(s.t)},
                {"q", complex_to_json(s.q.q)}};
}

Json to_json(const Psi2Spec& s) {
    return Json{{"a", complex_to_json(s.a)}, {"b", complex_to_json(s.b)},
                {"c", complex_to_json(s.c)}, {"d", complex_to_json(s.d)},
                {"t", complex_to_json(s.t)}, {"q", complex_to_json(s.q.q)}};
}

namespace {

void require_keys(const Json& j, const std::set<std::string>& keys, const std::string& where) {
    if (!j.is_object()) throw DomainError(where + ": expected a JSON object");
    for (const std::string& k : keys)
        if (!j.contains(k)) throw DomainError(where + ": missing key '" + k + "'");
    reject_unknown_keys(j, keys, where);
}

QBase qbase_from_json(const Json& j) { return QBase(complex_from_json(j)); }

}  // namespace

LemmaSpec lemma_spec_from_json(const Json& j) {
    require_keys(j, {"a", "b", "x", "t", "q"}, "lemma spec");
    return LemmaSpec{complex_list_from_json(j.at("a"), "a"), complex_list_from_json(j.at("b"), "b"),
                     complex_from_json(j.at("x")), complex_from_json(j.at("t")),
                     qbase_from_json(j.at("q"))};
}

TheoremSpec theorem_spec_from_json(const Json& j) {
    require_keys(j, {"a", "b", "c", "d", "x", "y", "t", "q"}, "theorem spec");
    return TheoremSpec{complex_list_from_json(j.at("a"), "a"),
                       complex_list_from_json(j.at("b"), "b"),
                       complex_list_from_json(j.at("c"), "c"),
                       complex_list_from_json(j.at("d"), "d"),
                       complex_from_json(j.at("x")),
                       complex_from_json(j.at("y")),
                       complex_from_json(j.at("t")),
                       qbase_from_json(j.at("q"))};
}

CorollarySpec corollary_spec_from_json(const Json& j) {
    require_keys(j, {"a", "b", "x", "c", "d", "t", "q"}, "corollary spec");
    return CorollarySpec{complex_list_from_json(j.at("a"), "a"),
                         complex_list_from_json(j.at("b"), "b"),
                         complex_from_json(j.at("x")),
                         complex_from_json(j.at("c")),
                         complex_from_json(j.at("d")),
                         complex_from_json(j.at("t")),
                         qbase_from_json(j.at("q"))};
}

Psi2Spec psi2_spec_from_json(const Json& j) {
    require_keys(j, {"a", "b", "c", "d", "t", "q"}, "psi2 spec");
    return Psi2Spec{complex_from_json(j.at("a")), complex_from_json(j.at("b")),
                    complex_from_json(j.at("c")), complex_from_json(j.at("d")),
                    complex_from_json(j.at("t")), qbase_from_json(j.at("q"))};
}

Json to_json(const SpecVariant& s) {
    return std::visit([](const auto& v) { return to_json(v); }, s);
}

Json to_json(const VerificationRecord& r) {
    Json j;
    j["identity"] = identity_name(r.identity);
    j["params"] = Json::parse(r.params.empty() ? "{}" : r.params);
    j["lhs"] = complex_to_json(r.lhs);
    j["rhs"] = complex_to_json(r.rhs);
    j["abs_diff"] = r.abs_diff;
    j["rel_diff"] = r.rel_diff;
    j["lhs_err"] = r.lhs_err;
    j["rhs_err"] = r.rhs_err;
    j["verdict"] = verdict_name(r.verdict);
    j["reason"] = r.reason;
    j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

Json to_json(const SamplerConfig& c) {
    Json qs = Json::array();
    for (const Complex& q : c.q_values) qs.push_back(complex_to_json(q));
    return Json{{"identity", suite_identity_name(c.identity)},
                {"k", c.k},
                {"l", c.l},
                {"seed", c.seed},
                {"q_values", qs},
                {"trials", c.trials},
                {"magnitude_lo", c.magnitude_lo},
                {"magnitude_hi", c.magnitude_hi},
                {"angle_policy", c.angle_policy == AnglePolicy::real_negative_x
                                     ? "real_negative_x"
                                     : "generic_complex"}};
}

Json to_json(const TruncationConfig& c) {
    return Json{{"tol_abs", c.tol_abs},
                {"confirm_window", c.confirm_window},
                {"n_cap", c.n_cap}};
}

Json to_json(const SuiteReport& r, double tol) {
    Json j;
    j["schema"] = "qbilateral-report/1";
    j["tol"] = tol;
    j["config"] = Json::parse(r.config_echo.empty() ? "{}" : r.config_echo);
    j["pass_count"] = r.pass_count;
    j["fail_count"] = r.fail_count;
    j["skip_count"] = r.skip_count;
    Json recs = Json::array();
    for (const auto& rec : r.records) recs.push_back(to_json(rec));
    j["records"] = recs;
    return j;
}

RunConfig run_config_from_json(const Json& j) {
    if (!j.is_object()) throw DomainError("run config must be a JSON object");
    reject_unknown_keys(j, {"identity", "k", "l", "seed", "q_values", "trials", "magnitude_lo",
                            "magnitude_hi", "angle_policy", "tol", "truncation"},
                        "run config");
    RunConfig cfg;
    try {
        if (j.contains("identity"))
            cfg.sampler.identity = parse_suite_identity(j.at("identity").get<std::string>());
        if (j.contains("k")) cfg.sampler.k = j.at("k").get<int>();
        if (j.contains("l")) cfg.sampler.l = j.at("l").get<int>();
        if (j.contains("seed")) cfg.sampler.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("q_values"))
            cfg.sampler.q_values = complex_list_from_json(j.at("q_values"), "q_values");
        if (j.contains("trials")) cfg.sampler.trials = j.at("trials").get<int>();
        if (j.contains("magnitude_lo")) cfg.sampler.magnitude_lo = j.at("magnitude_lo").get<double>();
        if (j.contains("magnitude_hi")) cfg.sampler.magnitude_hi = j.at("magnitude_hi").get<double>();
        if (j.contains("angle_policy")) {
            const std::string p = j.at("angle_policy").get<std::string>();
            if (p == "real_negative_x") cfg.sampler.angle_policy = AnglePolicy::real_negative_x;
            else if (p == "generic_complex") cfg.sampler.angle_policy = AnglePolicy::generic_complex;
            else throw DomainError("unknown angle_policy: " + p);
        }
        if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
        if (j.contains("truncation")) {
            const Json& t = j.at("truncation");
            reject_unknown_keys(t, {"tol_abs", "confirm_window", "n_cap"}, "truncation");
            if (t.contains("tol_abs")) cfg.trunc.tol_abs = t.at("tol_abs").get<double>();
            if (t.contains("confirm_window"))
                cfg.trunc.confirm_window = t.at("confirm_window").get<int>();
            if (t.contains("n_cap")) cfg.trunc.n_cap = t.at("n_cap").get<int>();
        }
    } catch (const Json::exception& e) {
        throw DomainError(std::string("run config: ") + e.what());
    }
    if (!(cfg.tol > 0.0)) throw DomainError("run config: tol must be positive");
    if (cfg.sampler.k < 0 || cfg.sampler.l < 0)
        throw DomainError("run config: k and l must be nonnegative");
    return cfg;
}

}  // namespace qb
