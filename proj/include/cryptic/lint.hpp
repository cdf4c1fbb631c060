#pragma once

// Structural lints over a parsed proof.  Each code closes one known way of
// producing a proof that passes without justifying anything: too few asserts,
// conditional execution, boolean-literal comparison, hallucinated helpers.

#include <algorithm>
#include <string>
#include <vector>

#include "cryptic/ast.hpp"

namespace cryptic {

inline const std::vector<std::string>& external_function_names() {
    static const std::vector<std::string> names = {
        "is_synonym", "is_abbreviation", "action_type", "is_anagram", "is_homophone",
    };
    return names;
}

inline bool is_external_function(std::string_view name) {
    const auto& names = external_function_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

namespace detail {

inline void lint_expr(const Expr& e, std::vector<LintViolation>& out) {
    if (e.kind == ExprKind::Call && !is_external_function(e.text)) {
        out.push_back({LintCode::UnknownFunction, e.line,
                       "unknown function '" + e.text + "'"});
    }
    if (e.kind == ExprKind::Compare &&
        (e.cmp == CompareOp::Eq || e.cmp == CompareOp::Neq)) {
        for (const auto& side : e.children) {
            if (side.kind == ExprKind::BoolLit) {
                out.push_back({LintCode::BooleanLiteralComparison, e.line,
                               "comparison against the boolean literal " +
                                   std::string(side.bool_value ? "True" : "False")});
                break;
            }
        }
    }
    for (const auto& c : e.children) lint_expr(c, out);
    for (const auto& [k, v] : e.kwargs) lint_expr(v, out);
}

}  // namespace detail

// Reports every violation; an empty result means structurally acceptable.
inline std::vector<LintViolation> lint_proof(const ProofScript& script) {
    std::vector<LintViolation> out = script.parse_lints;

    size_t asserts = script.assert_count();
    if (asserts < 2) {
        out.push_back({LintCode::TooFewAsserts, script.def_line,
                       "proof contains " + std::to_string(asserts) +
                           " assert statement(s); at least 2 are required"});
    }
    for (const auto& st : script.statements) detail::lint_expr(st.expr, out);

    std::stable_sort(out.begin(), out.end(),
                     [](const LintViolation& a, const LintViolation& b) {
                         return a.line < b.line;
                     });
    return out;
}

}  // namespace cryptic
