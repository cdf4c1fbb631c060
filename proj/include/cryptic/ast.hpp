#pragma once

// AST for the restricted assert-based proof language.  The grammar covers
// exactly: string/int/bool literals, the three proof parameters, Action enum
// references, calls to the external check functions, string concatenation,
// slicing with optional negative bounds, ==, != and `and`.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cryptic/action.hpp"

namespace cryptic {

enum class ExprKind {
    StrLit,
    IntLit,
    BoolLit,
    Ident,    // one of answer/clue/pattern (resolution checked at eval time)
    EnumRef,  // Action.NAME
    Call,
    Concat,   // children[0] + children[1]
    Slice,    // children[0][lo:hi]
    Compare,  // children[0] <op> children[1]
};

enum class CompareOp { Eq, Neq, And };

struct Expr {
    ExprKind kind = ExprKind::StrLit;
    int line = 0;

    std::string text;         // StrLit value, Ident name, or Call function name
    long int_value = 0;       // IntLit
    bool bool_value = false;  // BoolLit
    Action action = Action::Anagram;  // EnumRef
    CompareOp cmp = CompareOp::Eq;    // Compare

    std::vector<Expr> children;                        // operands / call args
    std::vector<std::pair<std::string, Expr>> kwargs;  // Call keyword args
    std::optional<long> slice_lo, slice_hi;            // Slice bounds
};

// Structural equality ignoring source line numbers (round-trip checks).
inline bool same_structure(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.text != b.text || a.int_value != b.int_value ||
        a.bool_value != b.bool_value || a.action != b.action || a.cmp != b.cmp ||
        a.slice_lo != b.slice_lo || a.slice_hi != b.slice_hi ||
        a.children.size() != b.children.size() || a.kwargs.size() != b.kwargs.size())
        return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!same_structure(a.children[i], b.children[i])) return false;
    for (size_t i = 0; i < a.kwargs.size(); ++i)
        if (a.kwargs[i].first != b.kwargs[i].first ||
            !same_structure(a.kwargs[i].second, b.kwargs[i].second))
            return false;
    return true;
}

enum class StatementKind { Assert, BareCall };

struct Statement {
    StatementKind kind = StatementKind::Assert;
    Expr expr;
    int line = 0;        // first physical line of the logical statement
    std::string source;  // logical line text as written
};

enum class LintCode {
    TooFewAsserts,
    ControlFlow,
    BooleanLiteralComparison,
    UnknownFunction,
    NoProofFunction,
};

inline std::string_view lint_code_name(LintCode c) {
    switch (c) {
        case LintCode::TooFewAsserts: return "TooFewAsserts";
        case LintCode::ControlFlow: return "ControlFlow";
        case LintCode::BooleanLiteralComparison: return "BooleanLiteralComparison";
        case LintCode::UnknownFunction: return "UnknownFunction";
        case LintCode::NoProofFunction: return "NoProofFunction";
    }
    return "";
}

struct LintViolation {
    LintCode code = LintCode::TooFewAsserts;
    int line = 0;
    std::string message;
};

struct ParseError {
    int line = 0;
    int column = 0;
    std::string message;
    bool no_proof_function = false;
};

struct ProofScript {
    std::string answer;   // uppercase; letters, spaces, hyphens only
    std::string clue;     // lowercased clue text
    std::string pattern;  // enumeration without parentheses, e.g. "7" or "4,2"
    std::string definition_annotation;
    std::string wordplay_annotation;
    std::vector<Statement> statements;
    int def_line = 1;

    // Forbidden constructs (control flow, assignment, import) discovered while
    // parsing.  They never become statements; lint_proof reports them.
    std::vector<LintViolation> parse_lints;

    size_t assert_count() const {
        size_t n = 0;
        for (const auto& s : statements)
            if (s.kind == StatementKind::Assert) ++n;
        return n;
    }
};

inline bool same_structure(const ProofScript& a, const ProofScript& b) {
    if (a.answer != b.answer || a.clue != b.clue || a.pattern != b.pattern ||
        a.definition_annotation != b.definition_annotation ||
        a.wordplay_annotation != b.wordplay_annotation ||
        a.statements.size() != b.statements.size())
        return false;
    for (size_t i = 0; i < a.statements.size(); ++i) {
        if (a.statements[i].kind != b.statements[i].kind) return false;
        if (!same_structure(a.statements[i].expr, b.statements[i].expr)) return false;
    }
    return true;
}

}  // namespace cryptic
