#pragma once

// Rendering of check reports: the machine-readable JSON document and the
// line-per-check text form share one code path so both stay deterministic.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <hypsum/identities.hpp>
#include <hypsum/rules.hpp>

namespace hypsum::cli {

using json = nlohmann::ordered_json;

struct RunInfo {
    std::string command;
    std::optional<std::uint64_t> seed;
    std::optional<long> digits;
};

// A rule fuzzing run folded into the common check shape.
inline ident::VerificationReport trial_check(const rules::TrialReport& t) {
    ident::VerificationReport r;
    r.id = t.rule_id;
    r.params = "trials=" + std::to_string(t.requested) + ",seed=" + std::to_string(t.seed);
    r.mode = "property";
    r.lhs = std::to_string(t.passed) + " passed";
    r.rhs = std::to_string(t.requested) + " required";
    r.pass = t.ok();
    r.trace = t.failures;  // counterexample descriptions, capped upstream
    return r;
}

inline json check_json(const ident::VerificationReport& r) {
    json c;
    c["id"] = r.id;
    c["params"] = r.params;
    c["mode"] = r.mode;
    c["lhs"] = r.lhs;
    c["rhs"] = r.rhs;
    c["status"] = r.pass ? "pass" : "fail";
    if (!r.abs_diff.empty()) c["abs_diff"] = r.abs_diff;
    if (!r.tolerance.empty()) c["tolerance"] = r.tolerance;
    if (!r.trace.empty()) c["trace"] = r.trace;
    return c;
}

inline json report_json(const RunInfo& run,
                        const std::vector<ident::VerificationReport>& checks) {
    json doc;
    doc["run"] = json::object();
    doc["run"]["command"] = run.command;
    if (run.seed) doc["run"]["seed"] = *run.seed;
    if (run.digits) doc["run"]["digits"] = *run.digits;
    doc["checks"] = json::array();
    for (const auto& c : checks) doc["checks"].push_back(check_json(c));
    return doc;
}

inline std::string render_text(const std::vector<ident::VerificationReport>& checks) {
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& c : checks) {
        os << (c.pass ? "pass" : "FAIL") << "  " << c.id;
        if (!c.params.empty()) os << " [" << c.params << "]";
        os << "  lhs = " << c.lhs << "  rhs = " << c.rhs;
        if (!c.abs_diff.empty()) os << "  |diff| = " << c.abs_diff << " <= " << c.tolerance;
        os << "\n";
        if (!c.pass)
            for (const auto& t : c.trace) os << "      " << t << "\n";
        if (c.pass) ++passed;
    }
    os << passed << "/" << checks.size() << " checks passed\n";
    return os.str();
}

// Writes to the path when given, stdout otherwise.
inline int emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open " << out_path << " for writing\n";
        return 2;
    }
    f << payload;
    return 0;
}

inline int emit_report(const RunInfo& run, const std::vector<ident::VerificationReport>& checks,
                       const std::string& format, const std::string& out_path) {
    std::string payload = format == "json" ? report_json(run, checks).dump(2) + "\n"
                                           : render_text(checks);
    return emit(payload, out_path);
}

}  // namespace hypsum::cli
