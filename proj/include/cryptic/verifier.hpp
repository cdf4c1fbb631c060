#pragma once

// Runs every assert in a proof against the knowledge base, collecting all
// failures and their hints in one pass, and renders the feedback text that
// drives the rewrite loop.  The feedback format is a stable contract; golden
// files under tests/ pin it.

#include <optional>
#include <string>
#include <vector>

#include "cryptic/ast.hpp"
#include "cryptic/eval.hpp"
#include "cryptic/knowledge.hpp"
#include "cryptic/lint.hpp"
#include "cryptic/parser.hpp"

namespace cryptic {

enum class AssertStatus { Pass, Fail, Error };

inline std::string_view assert_status_name(AssertStatus s) {
    switch (s) {
        case AssertStatus::Pass: return "pass";
        case AssertStatus::Fail: return "fail";
        case AssertStatus::Error: return "error";
    }
    return "";
}

struct AssertionOutcome {
    int line = 0;
    std::string source;        // logical line as written
    std::string display_expr;  // canonical single-quoted form, used in feedback
    AssertStatus status = AssertStatus::Pass;
    std::optional<std::string> hint;  // absent iff status == Pass
};

enum class Verdict { Success, Failed };

struct VerificationReport {
    std::vector<AssertionOutcome> outcomes;  // one per assert, source order
    std::vector<LintViolation> lint_violations;
    Verdict verdict = Verdict::Failed;
};

// Fixed tail appended to every feedback text after the error blocks.
inline constexpr std::string_view kRewriteInstruction =
    "# Please re-implement the SOLUTION above (altering both the docstring and "
    "the python code as required), taking care to fix each of the problems "
    "identified, and return the whole function:";

inline constexpr std::string_view kHandoverStub = "```python\ndef proof(answer=";

namespace detail {

inline std::string squote(std::string_view s) {
    return "'" + std::string(s) + "'";
}

inline std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

// One hint per failing check call, phrased the way the formaliser sees it.
inline std::vector<std::string> hint_lines_for_call(const CallRecord& r) {
    std::vector<std::string> lines;
    const auto arg = [&](size_t i) -> std::string {
        return i < r.args.size() ? r.args[i] : "";
    };

    const NearMiss* sub = nullptr;
    const NearMiss* other = nullptr;
    const NearMiss* expansions = nullptr;
    const NearMiss* pattern_miss = nullptr;
    const NearMiss* rejected = nullptr;
    const NearMiss* encodings = nullptr;
    const NearMiss* anagram_diff = nullptr;
    bool oracle_unavailable = false;
    for (const auto& m : r.outcome.near_misses) {
        switch (m.kind) {
            case NearMissKind::IndicatorSubphrase: if (!sub) sub = &m; break;
            case NearMissKind::IndicatorOtherAction: if (!other) other = &m; break;
            case NearMissKind::AbbreviationExpansions: expansions = &m; break;
            case NearMissKind::PatternMismatch: pattern_miss = &m; break;
            case NearMissKind::SynonymRejected: rejected = &m; break;
            case NearMissKind::HomophoneEncodings: encodings = &m; break;
            case NearMissKind::AnagramLetterDiff: anagram_diff = &m; break;
            case NearMissKind::OracleUnavailable: oracle_unavailable = true; break;
        }
    }

    if (r.function == "is_abbreviation") {
        lines.push_back(squote(arg(0)) + " does not have a valid abbreviation;");
        std::string abbr = to_upper(trim(arg(1)));
        if (expansions && !expansions->suggestions.empty())
            lines.push_back(squote(abbr) + " is an abbreviation for : " +
                            join_list(expansions->suggestions));
        else
            lines.push_back(squote(abbr) + " has no known expansions");
    } else if (r.function == "action_type") {
        std::string action = r.action ? std::string(action_name(*r.action)) : "?";
        std::string line = squote(arg(0)) + " does not suggest Action." + action;
        if (sub) line += ", but " + squote(sub->matched_subphrase) + " does";
        if (other && !other->suggestions.empty()) {
            line += sub ? "; the whole phrase may be Action." + other->suggestions[0]
                        : ", but may be Action." + other->suggestions[0];
        }
        lines.push_back(std::move(line));
    } else if (r.function == "is_synonym") {
        if (pattern_miss) {
            std::string pat = pattern_miss->suggestions.empty() ? ""
                                                                : pattern_miss->suggestions[0];
            if (pattern_miss->suggestions.size() > 1)
                lines.push_back("the pattern " + squote(pat) + " is malformed");
            else
                lines.push_back(squote(normalise_answer(arg(1))) +
                                " does not match the pattern " + squote(pat));
        } else {
            std::string line = squote(arg(1)) + " is not a known synonym for " + squote(arg(0));
            if (rejected && !rejected->suggestions.empty())
                line += " (no match in " + join_list(rejected->suggestions) + ")";
            lines.push_back(std::move(line));
        }
        if (oracle_unavailable)
            lines.push_back("the synonym oracle was unavailable");
    } else if (r.function == "is_homophone") {
        std::string line = squote(arg(1)) + " does not sound like " + squote(arg(0));
        if (encodings && encodings->suggestions.size() == 2)
            line += " (" + squote(encodings->suggestions[1]) + " vs " +
                    squote(encodings->suggestions[0]) + ")";
        lines.push_back(std::move(line));
        if (oracle_unavailable)
            lines.push_back("the homophone oracle was unavailable");
    } else if (r.function == "is_anagram") {
        std::string line = squote(arg(1)) + " is not an anagram of " + squote(arg(0));
        if (anagram_diff && !anagram_diff->suggestions.empty())
            line += " (" + join_list(anagram_diff->suggestions) + ")";
        lines.push_back(std::move(line));
    } else {
        lines.push_back("the call to " + r.function + " failed");
    }
    return lines;
}

inline std::string render_value(const Value& v) {
    switch (v.index()) {
        case 0: return squote(std::get<std::string>(v));
        case 1: return std::to_string(std::get<long>(v));
        default: return std::get<bool>(v) ? "True" : "False";
    }
}

// Explains a false assert with no failing check call: walks the `and` chain
// to the first false conjunct and shows both sides of a failed comparison.
inline std::vector<std::string> explain_false_expr(const Expr& e, const Env& env,
                                                   const KnowledgeBase& kb) {
    if (e.kind == ExprKind::Compare && e.cmp == CompareOp::And) {
        auto l = eval_expr(e.children[0], env, kb);
        if (l.ok() && std::holds_alternative<bool>(l.value()) && !std::get<bool>(l.value()))
            return explain_false_expr(e.children[0], env, kb);
        return explain_false_expr(e.children[1], env, kb);
    }
    if (e.kind == ExprKind::Compare) {
        auto l = eval_expr(e.children[0], env, kb);
        auto r = eval_expr(e.children[1], env, kb);
        if (l.ok() && r.ok()) {
            if (e.cmp == CompareOp::Eq)
                return {"the left-hand side evaluates to " + render_value(l.value()) +
                        " but the right-hand side is " + render_value(r.value())};
            return {"both sides evaluate to " + render_value(l.value())};
        }
    }
    return {"the expression evaluates to False"};
}

}  // namespace detail

inline VerificationReport verify(const ProofScript& script, const KnowledgeBase& kb) {
    VerificationReport report;
    report.lint_violations = lint_proof(script);

    Env env{script.answer, script.clue, script.pattern};
    for (const auto& st : script.statements) {
        if (st.kind != StatementKind::Assert) continue;

        AssertionOutcome outcome;
        outcome.line = st.line;
        outcome.source = st.source;
        outcome.display_expr = dsl::render_expr(st.expr, dsl::QuoteStyle::Single);

        CallTrace trace;
        auto result = eval_expr(st.expr, env, kb, &trace);
        if (!result.ok()) {
            outcome.status = AssertStatus::Error;
            outcome.hint = "line " + std::to_string(result.error().line) + ": " +
                           result.error().message;
        } else if (!std::holds_alternative<bool>(result.value())) {
            outcome.status = AssertStatus::Error;
            outcome.hint = "assert expression is not boolean (evaluates to " +
                           detail::render_value(result.value()) + ")";
        } else if (std::get<bool>(result.value())) {
            outcome.status = AssertStatus::Pass;
        } else {
            outcome.status = AssertStatus::Fail;
            std::vector<std::string> lines;
            for (const auto& call : trace) {
                if (call.outcome.ok) continue;
                for (auto& l : detail::hint_lines_for_call(call)) lines.push_back(std::move(l));
            }
            if (lines.empty()) lines = detail::explain_false_expr(st.expr, env, kb);
            std::string hint;
            for (size_t i = 0; i < lines.size(); ++i) {
                if (i) hint += "\n";
                hint += lines[i];
            }
            outcome.hint = hint;
        }
        report.outcomes.push_back(std::move(outcome));
    }

    bool all_pass = true;
    for (const auto& o : report.outcomes)
        if (o.status != AssertStatus::Pass) all_pass = false;
    report.verdict = (report.lint_violations.empty() && all_pass) ? Verdict::Success
                                                                  : Verdict::Failed;
    return report;
}

namespace detail {

inline std::string feedback_tail() {
    std::string out;
    out += "\n";
    out += kRewriteInstruction;
    out += "\n\n";
    out += kHandoverStub;
    return out;
}

}  // namespace detail

// Feedback for a failed report: one AssertionError block per non-pass assert,
// structure problems first, then the fixed rewrite instruction and handover
// stub.  Only meaningful when report.verdict == Failed.
inline std::string render_feedback(const VerificationReport& report) {
    std::string out;
    for (const auto& lint : report.lint_violations) {
        out += "StructureError: " + lint.message + " (line " +
               std::to_string(lint.line) + ")\n";
    }
    for (const auto& o : report.outcomes) {
        if (o.status == AssertStatus::Pass) continue;
        const std::string& expr_text = o.display_expr.empty() ? o.source : o.display_expr;
        out += "AssertionError: assert " + expr_text + " :\n";
        if (o.hint) {
            for (const auto& line : split_on(*o.hint, "\n"))
                out += "  " + line + "\n";
        }
    }
    out += detail::feedback_tail();
    return out;
}

// Feedback for output that did not even parse.
inline std::string render_parse_feedback(const ParseError& error) {
    std::string out = "SyntaxError: " + error.message + " (line " +
                      std::to_string(error.line) + ", column " +
                      std::to_string(error.column) + ")\n";
    out += detail::feedback_tail();
    return out;
}

}  // namespace cryptic
