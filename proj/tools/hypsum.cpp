// Command-line front end.  Subcommands: verify identities and lemmas over
// parameter grids, recognize a summand as a hypergeometric series, evaluate a
// pFq expression, and fuzz the rule database against randomized oracles.
//
// Exit codes: 0 all checks pass / value produced, 1 at least one check failed,
// 2 usage or parse error (including unknown ids and empty ranges), 3 the
// mathematics refuses (not hypergeometric, irrational roots, divergent).

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <hypsum/identities.hpp>
#include <hypsum/parser.hpp>
#include <hypsum/recognize.hpp>
#include <hypsum/rules.hpp>
#include <hypsum/special.hpp>

#include "report.hpp"

namespace {

using hypsum::exact::Rational;
using hypsum::special::Real;
using json = hypsum::cli::json;
namespace hyper = hypsum::hyper;
namespace ident = hypsum::ident;
namespace rules = hypsum::rules;
namespace special = hypsum::special;
namespace cli = hypsum::cli;

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

json pfq_json(const hyper::PFQ& f) {
    json s;
    s["text"] = f.to_string();
    s["upper"] = json::array();
    for (const auto& a : f.upper) s["upper"].push_back(a.to_string());
    s["lower"] = json::array();
    for (const auto& b : f.lower) s["lower"].push_back(b.to_string());
    s["arg"] = f.arg.to_string();
    s["regularized"] = f.regularized;
    return s;
}

json classification_json(const hyper::Classification& c) {
    json j;
    j["terminating"] = c.terminating;
    if (c.terminating) j["truncation"] = c.truncation;
    j["balance"] = c.balance.to_string();
    j["saalschutzian"] = c.saalschutzian;
    j["convergent"] = c.convergent;
    return j;
}

std::string classification_text(const hyper::Classification& c) {
    std::string s = "terminating = ";
    s += c.terminating ? "yes (N = " + std::to_string(c.truncation) + ")" : "no";
    s += ", balance = " + c.balance.to_string();
    s += c.saalschutzian ? ", saalschutzian = yes" : ", saalschutzian = no";
    s += c.convergent ? ", convergent = yes" : ", convergent = no";
    return s;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
    std::string id, n_range, m_range, k_range, mode;
    long digits = 0;
    long jobs = 1;
    std::string format = "text", out;
};

std::pair<long, long> default_n_range(const std::string& id) {
    if (id == "S4") return {2, 200};
    if (id == "S6") return {0, 80};
    if (id == "S7") return {1, 150};
    return {0, 300};
}

int cmd_verify(const VerifyOpts& o) {
    if (o.digits != 0 && o.digits < 10) return usage_error("--digits must be at least 10");
    if (o.jobs < 1) return usage_error("--jobs must be positive");
    if (!o.mode.empty() && o.mode != "exact" && o.mode != "numeric")
        return usage_error("--mode must be 'exact' or 'numeric'");

    cli::RunInfo run{"verify", std::nullopt,
                     o.digits > 0 ? std::optional<long>(o.digits) : std::nullopt};
    std::vector<std::function<ident::VerificationReport()>> tasks;

    if (o.id.empty()) {
        if (!o.n_range.empty() || !o.m_range.empty() || !o.k_range.empty() || !o.mode.empty())
            return usage_error("--n/--m/--k/--mode select within a single --id");
        ident::GridConfig cfg;
        cfg.jobs = o.jobs;
        if (o.digits > 0) cfg.s5_digits = cfg.s9_digits = o.digits;
        auto checks = ident::verify_all(cfg);
        if (int rc = cli::emit_report(run, checks, o.format, o.out)) return rc;
        for (const auto& c : checks)
            if (!c.pass) return 1;
        return 0;
    }

    const ident::IdentityEntry* ie = nullptr;
    for (const auto& e : ident::identity_registry())
        if (e.id == o.id) ie = &e;
    const ident::LemmaEntry* le = nullptr;
    if (!ie)
        for (const auto& e : ident::lemma_registry())
            if (e.id == o.id) le = &e;
    if (!ie && !le) return usage_error("unknown id '" + o.id + "'");

    if (ie && ie->numeric) {
        if (!o.n_range.empty() || !o.m_range.empty() || !o.k_range.empty())
            return usage_error(o.id + " takes no parameter ranges");
        if (!o.mode.empty() && o.mode != "numeric")
            return usage_error(o.id + " is a numeric check");
        long d = o.digits > 0 ? o.digits : ie->default_digits;
        run.digits = d;
        tasks.push_back([id = ie->id, d] { return ident::verify_identity(id, 0, 0, d); });
    } else if (ie) {
        if (!o.mode.empty() && o.mode != "exact")
            return usage_error(o.id + " is an exact check");
        bool wants_m = ie->params == ident::ParamKind::NM;
        bool wants_k = ie->params == ident::ParamKind::NK;
        if (!o.m_range.empty() && !wants_m) return usage_error(o.id + " takes no --m");
        if (!o.k_range.empty() && !wants_k) return usage_error(o.id + " takes no --k");

        auto [n_lo, n_hi] = o.n_range.empty() ? default_n_range(o.id)
                                              : hyper::parse_range(o.n_range);
        std::optional<std::pair<long, long>> extra;
        if (wants_m && !o.m_range.empty()) extra = hyper::parse_range(o.m_range);
        if (wants_k && !o.k_range.empty()) extra = hyper::parse_range(o.k_range);

        for (long n = n_lo; n <= n_hi; ++n) {
            if (!wants_m && !wants_k) {
                if (!ie->in_domain(n, 0)) continue;
                tasks.push_back([id = ie->id, n] { return ident::verify_identity(id, n); });
                continue;
            }
            // grid defaults mirror the full run: S4 over 2..n, S6 over 0..n
            auto [e_lo, e_hi] = extra ? *extra : std::pair<long, long>{wants_m ? 2 : 0, n};
            for (long x = e_lo; x <= e_hi; ++x) {
                if (!ie->in_domain(n, x)) continue;
                tasks.push_back([id = ie->id, n, x] { return ident::verify_identity(id, n, x); });
            }
        }
        if (tasks.empty()) return usage_error("empty parameter range for " + o.id);
    } else {
        if (!o.m_range.empty() || !o.k_range.empty())
            return usage_error("lemma checks take no --m/--k");
        if (!o.mode.empty()) return usage_error("--mode applies to identity checks");
        long lo = le->n_lo, hi = le->n_hi;
        if (!o.n_range.empty()) {
            auto [a, b] = hyper::parse_range(o.n_range);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
        }
        if (lo > hi) return usage_error("empty parameter range for " + o.id);
        for (long n = lo; n <= hi; ++n)
            tasks.push_back([id = le->id, n] { return ident::verify_lemma(id, n); });
    }

    auto checks = ident::detail::run_tasks(std::move(tasks), o.jobs);
    if (int rc = cli::emit_report(run, checks, o.format, o.out)) return rc;
    for (const auto& c : checks)
        if (!c.pass) return 1;
    return 0;
}

// ---------------------------------------------------------------------------
// recognize

struct RecognizeOpts {
    std::string sum;
    long n = 0;
    long from = 0;
    std::string to = "n";
    long digits = 30;
    std::string format = "text", out;
};

int cmd_recognize(const RecognizeOpts& o) {
    if (o.digits < 10) return usage_error("--digits must be at least 10");
    hyper::SumSpec s;
    s.start = o.from;
    s.n_value = Rational(o.n);
    if (o.to == "n") {
        s.end = hyper::SumEnd::at_n();
        if (o.n < o.from) return usage_error("empty summation range");
    } else if (o.to == "inf") {
        s.end = hyper::SumEnd::infinite();
    } else {
        try {
            s.end = hyper::SumEnd::fixed(std::stol(o.to));
        } catch (const std::exception&) {
            return usage_error("--to must be an integer, 'n', or 'inf'");
        }
        if (s.end.value < o.from) return usage_error("empty summation range");
    }

    s.term = hyper::parse_term_spec(o.sum);
    auto rec = hyper::recognize(s);
    auto cls = hyper::classify(rec.series);

    std::string value_label, value;
    if (s.end.kind != hyper::SumEnd::Infinite) {
        long stop = s.end.kind == hyper::SumEnd::AtN ? o.n : s.end.value;
        long terms = stop - rec.k0 + 1;
        Rational v = rec.prefactor * hyper::pfq_partial_sum(rec.series, terms);
        // the range exhausts a terminating series when all N+1 terms fit
        value_label = cls.terminating && cls.truncation < terms ? "sum" : "partial_sum";
        value = v.to_string();
    } else if (cls.terminating) {
        Rational v = rec.prefactor * hyper::pfq_sum(rec.series);
        value_label = "sum";
        value = v.to_string();
    } else {
        if (!cls.convergent)
            throw hypsum::Divergent("recognized series diverges at its argument");
        Real estimate = special::eval_pfq_numeric(rec.series, o.digits) *
                        Real(rec.prefactor, special::bits_for_digits(o.digits + 10));
        value_label = "estimate";
        value = estimate.to_string(o.digits);
    }

    if (o.format == "json") {
        json doc;
        doc["run"]["command"] = "recognize";
        doc["run"]["digits"] = o.digits;
        json& r = doc["result"];
        r["prefactor"] = rec.prefactor.to_string();
        r["k0"] = rec.k0;
        r["series"] = pfq_json(rec.series);
        r["classification"] = classification_json(cls);
        r[value_label] = value;
        return cli::emit(doc.dump(2) + "\n", o.out);
    }
    std::ostringstream os;
    os << "prefactor = " << rec.prefactor.to_string() << "  (first nonzero term at k = " << rec.k0
       << ")\n";
    os << "series = " << rec.series.to_string() << "\n";
    os << classification_text(cls) << "\n";
    os << value_label << " = " << value << "\n";
    return cli::emit(os.str(), o.out);
}

// ---------------------------------------------------------------------------
// eval

struct EvalOpts {
    std::string pfq;
    long digits = 30;
    std::string format = "text", out;
};

int cmd_eval(const EvalOpts& o) {
    if (o.digits < 10) return usage_error("--digits must be at least 10");
    hyper::PFQ f = hyper::parse_pfq(o.pfq);
    auto cls = hyper::classify(f);

    std::string value, kind;
    if (cls.terminating) {
        value = hyper::pfq_sum(f).to_string();
        kind = "exact";
    } else {
        if (!cls.convergent) throw hypsum::Divergent(f.to_string() + " diverges");
        value = special::eval_pfq_numeric(f, o.digits).to_string(o.digits);
        kind = "numeric";
    }

    if (o.format == "json") {
        json doc;
        doc["run"]["command"] = "eval";
        doc["run"]["digits"] = o.digits;
        doc["result"]["series"] = pfq_json(f);
        doc["result"]["classification"] = classification_json(cls);
        doc["result"]["value"] = value;
        doc["result"]["value_kind"] = kind;
        return cli::emit(doc.dump(2) + "\n", o.out);
    }
    std::ostringstream os;
    os << f.to_string() << "\n" << classification_text(cls) << "\n";
    os << "value = " << value << (kind == "exact" ? "  (exact)\n" : "\n");
    return cli::emit(os.str(), o.out);
}

// ---------------------------------------------------------------------------
// rules

struct RulesCheckOpts {
    std::string id = "all";
    long trials = 200;
    std::uint64_t seed = 12345;
    std::string format = "text", out;
};

int cmd_rules_check(const RulesCheckOpts& o) {
    if (o.trials < 1) return usage_error("--trials must be positive");
    std::vector<const rules::Rule*> targets;
    if (o.id == "all") {
        for (const auto& r : rules::rule_registry()) targets.push_back(&r);
    } else {
        targets.push_back(&rules::find_rule(o.id));
    }
    std::vector<ident::VerificationReport> checks;
    checks.reserve(targets.size());
    for (const auto* r : targets) checks.push_back(cli::trial_check(rules::run_trials(*r, o.trials, o.seed)));

    cli::RunInfo run{"rules check", o.seed, std::nullopt};
    if (int rc = cli::emit_report(run, checks, o.format, o.out)) return rc;
    for (const auto& c : checks)
        if (!c.pass) return 1;
    return 0;
}

int cmd_rules_list(const std::string& format, const std::string& out) {
    if (format == "json") {
        json doc;
        doc["run"]["command"] = "rules list";
        doc["rules"] = json::array();
        for (const auto& r : rules::rule_registry())
            doc["rules"].push_back({{"id", r.id}, {"citation", r.citation}});
        return cli::emit(doc.dump(2) + "\n", out);
    }
    std::size_t width = 0;
    for (const auto& r : rules::rule_registry()) width = std::max(width, r.id.size());
    std::ostringstream os;
    for (const auto& r : rules::rule_registry())
        os << r.id << std::string(width - r.id.size() + 2, ' ') << r.citation << "\n";
    return cli::emit(os.str(), out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and arbitrary-precision verification of binomial sum identities"};
    app.require_subcommand(1);

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "check identities and lemmas over parameter grids");
    verify->add_option("--id", vo.id, "identity or lemma id; omitted runs the full suite");
    verify->add_option("--n", vo.n_range, "range a..b or a single value");
    verify->add_option("--m", vo.m_range, "second parameter range (two-parameter identities)");
    verify->add_option("--k", vo.k_range, "second parameter range (two-parameter identities)");
    verify->add_option("--mode", vo.mode, "exact|numeric; must match the check's native mode");
    verify->add_option("--digits", vo.digits, "working precision for numeric checks");
    verify->add_option("--jobs", vo.jobs, "parallel workers over grid points");
    verify->add_option("--format", vo.format, "text|json (default text)");
    verify->add_option("--out", vo.out, "write the report to a file instead of stdout");

    RecognizeOpts ro;
    auto* recognize = app.add_subcommand("recognize", "read pFq data off a summand");
    recognize->add_option("--sum", ro.sum, "summand in the term grammar")->required();
    recognize->add_option("--n", ro.n, "value of the free symbol n");
    recognize->add_option("--from", ro.from, "first summation index (default 0)");
    recognize->add_option("--to", ro.to, "last summation index: an integer, 'n', or 'inf'");
    recognize->add_option("--digits", ro.digits, "precision for non-terminating estimates");
    recognize->add_option("--format", ro.format, "text|json (default text)");
    recognize->add_option("--out", ro.out, "write the report to a file instead of stdout");

    EvalOpts eo;
    auto* eval = app.add_subcommand("eval", "evaluate a pFq expression");
    eval->add_option("--pfq", eo.pfq, "series as pFq(a1,..;b1,..;z), optional 'reg' prefix")
        ->required();
    eval->add_option("--digits", eo.digits, "precision for non-terminating series");
    eval->add_option("--format", eo.format, "text|json (default text)");
    eval->add_option("--out", eo.out, "write the report to a file instead of stdout");

    auto* rules_cmd = app.add_subcommand("rules", "inspect and fuzz the rule database");
    rules_cmd->require_subcommand(1);
    RulesCheckOpts co;
    auto* check = rules_cmd->add_subcommand("check", "run randomized oracle trials");
    check->add_option("--id", co.id, "rule id, or 'all' (default)");
    check->add_option("--trials", co.trials, "trials per rule (default 200)");
    check->add_option("--seed", co.seed, "RNG seed (default 12345)");
    check->add_option("--format", co.format, "text|json (default text)");
    check->add_option("--out", co.out, "write the report to a file instead of stdout");
    std::string list_format = "text", list_out;
    auto* list = rules_cmd->add_subcommand("list", "print rule ids and citations");
    list->add_option("--format", list_format, "text|json (default text)");
    list->add_option("--out", list_out, "write the report to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (const std::string* fmt : {&vo.format, &ro.format, &eo.format, &co.format, &list_format})
        if (*fmt != "text" && *fmt != "json") return usage_error("--format must be text or json");

    try {
        if (verify->parsed()) return cmd_verify(vo);
        if (recognize->parsed()) return cmd_recognize(ro);
        if (eval->parsed()) return cmd_eval(eo);
        if (check->parsed()) return cmd_rules_check(co);
        if (list->parsed()) return cmd_rules_list(list_format, list_out);
    } catch (const hypsum::SyntaxError& e) {
        return usage_error(std::string("parse: ") + e.what());
    } catch (const hypsum::UnknownId& e) {
        return usage_error(e.what());
    } catch (const hypsum::DomainError& e) {
        return usage_error(e.what());
    } catch (const hypsum::MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
