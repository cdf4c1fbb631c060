#pragma once

// Expression evaluation against the knowledge base.  Evaluation never mutates
// the environment or the knowledge base; check calls made along the way are
// recorded in a CallTrace so the verifier can turn near-misses into hints.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cryptic/ast.hpp"
#include "cryptic/knowledge.hpp"
#include "cryptic/lint.hpp"
#include "cryptic/result.hpp"

namespace cryptic {

using Value = std::variant<std::string, long, bool>;

struct EvalError {
    int line = 0;
    std::string message;
};

struct Env {
    std::string answer;
    std::string clue;
    std::string pattern;
};

struct CallRecord {
    std::string function;
    std::vector<std::string> args;  // evaluated string arguments, display form
    std::optional<Action> action;
    std::optional<std::string> pattern_kwarg;
    CheckOutcome outcome;
    int line = 0;
};

using CallTrace = std::vector<CallRecord>;

namespace detail {

inline std::string value_type_name(const Value& v) {
    switch (v.index()) {
        case 0: return "string";
        case 1: return "int";
        default: return "bool";
    }
}

inline std::string slice_apply(const std::string& s, std::optional<long> lo_opt,
                               std::optional<long> hi_opt) {
    const long n = static_cast<long>(s.size());
    long lo = lo_opt.value_or(0);
    long hi = hi_opt.value_or(n);
    if (lo < 0) lo += n;
    if (hi < 0) hi += n;
    lo = std::max(0L, std::min(lo, n));
    hi = std::max(0L, std::min(hi, n));
    if (lo >= hi) return "";
    return s.substr(static_cast<size_t>(lo), static_cast<size_t>(hi - lo));
}

}  // namespace detail

inline Result<Value, EvalError> eval_expr(const Expr& expr, const Env& env,
                                          const KnowledgeBase& kb,
                                          CallTrace* trace = nullptr) {
    using detail::value_type_name;

    switch (expr.kind) {
        case ExprKind::StrLit: return Value(expr.text);
        case ExprKind::IntLit: return Value(expr.int_value);
        case ExprKind::BoolLit: return Value(expr.bool_value);

        case ExprKind::Ident: {
            if (expr.text == "answer") return Value(env.answer);
            if (expr.text == "clue") return Value(env.clue);
            if (expr.text == "pattern") return Value(env.pattern);
            return EvalError{expr.line, "unknown identifier '" + expr.text + "'"};
        }

        case ExprKind::EnumRef:
            return EvalError{expr.line,
                             "Action." + std::string(action_name(expr.action)) +
                                 " is only valid as the action_type argument"};

        case ExprKind::Concat: {
            auto l = eval_expr(expr.children[0], env, kb, trace);
            if (!l.ok()) return l.error();
            auto r = eval_expr(expr.children[1], env, kb, trace);
            if (!r.ok()) return r.error();
            if (!std::holds_alternative<std::string>(l.value()) ||
                !std::holds_alternative<std::string>(r.value()))
                return EvalError{expr.line,
                                 "'+' requires string operands, got " +
                                     value_type_name(l.value()) + " and " +
                                     value_type_name(r.value())};
            return Value(std::get<std::string>(l.value()) + std::get<std::string>(r.value()));
        }

        case ExprKind::Slice: {
            auto t = eval_expr(expr.children[0], env, kb, trace);
            if (!t.ok()) return t.error();
            if (!std::holds_alternative<std::string>(t.value()))
                return EvalError{expr.line, "slicing requires a string, got " +
                                                value_type_name(t.value())};
            return Value(detail::slice_apply(std::get<std::string>(t.value()),
                                             expr.slice_lo, expr.slice_hi));
        }

        case ExprKind::Compare: {
            if (expr.cmp == CompareOp::And) {
                auto l = eval_expr(expr.children[0], env, kb, trace);
                if (!l.ok()) return l.error();
                if (!std::holds_alternative<bool>(l.value()))
                    return EvalError{expr.line, "'and' requires boolean operands, got " +
                                                    value_type_name(l.value())};
                if (!std::get<bool>(l.value())) return Value(false);
                auto r = eval_expr(expr.children[1], env, kb, trace);
                if (!r.ok()) return r.error();
                if (!std::holds_alternative<bool>(r.value()))
                    return EvalError{expr.line, "'and' requires boolean operands, got " +
                                                    value_type_name(r.value())};
                return Value(std::get<bool>(r.value()));
            }
            auto l = eval_expr(expr.children[0], env, kb, trace);
            if (!l.ok()) return l.error();
            auto r = eval_expr(expr.children[1], env, kb, trace);
            if (!r.ok()) return r.error();
            bool equal = l.value().index() == r.value().index() && l.value() == r.value();
            return Value(expr.cmp == CompareOp::Eq ? equal : !equal);
        }

        case ExprKind::Call: {
            const std::string& fn = expr.text;
            if (!is_external_function(fn))
                return EvalError{expr.line, "unknown function '" + fn + "'"};

            std::vector<std::string> args;
            std::optional<Action> action_arg;
            for (size_t i = 0; i < expr.children.size(); ++i) {
                const Expr& a = expr.children[i];
                if (a.kind == ExprKind::EnumRef) {
                    if (!(fn == "action_type" && i == 1))
                        return EvalError{a.line,
                                         "Action values are only valid as the second "
                                         "argument of action_type"};
                    action_arg = a.action;
                    continue;
                }
                auto v = eval_expr(a, env, kb, trace);
                if (!v.ok()) return v.error();
                if (!std::holds_alternative<std::string>(v.value()))
                    return EvalError{a.line, fn + " arguments must be strings, got " +
                                                 value_type_name(v.value())};
                args.push_back(std::get<std::string>(v.value()));
            }

            std::optional<std::string> pattern_kwarg;
            for (const auto& [name, v] : expr.kwargs) {
                if (fn != "is_synonym" || name != "pattern")
                    return EvalError{expr.line,
                                     "unexpected keyword argument '" + name + "' for " + fn};
                auto pv = eval_expr(v, env, kb, trace);
                if (!pv.ok()) return pv.error();
                if (!std::holds_alternative<std::string>(pv.value()))
                    return EvalError{expr.line, "pattern must be a string"};
                pattern_kwarg = std::get<std::string>(pv.value());
            }

            CallRecord record;
            record.function = fn;
            record.line = expr.line;
            record.action = action_arg;
            record.pattern_kwarg = pattern_kwarg;

            CheckOutcome outcome;
            if (fn == "is_anagram") {
                if (args.size() != 2)
                    return EvalError{expr.line, "is_anagram expects 2 arguments"};
                outcome = kb.is_anagram(args[0], args[1]);
            } else if (fn == "is_abbreviation") {
                if (args.size() != 2)
                    return EvalError{expr.line, "is_abbreviation expects 2 arguments"};
                outcome = kb.is_abbreviation(args[0], args[1]);
            } else if (fn == "is_homophone") {
                if (args.size() != 2)
                    return EvalError{expr.line, "is_homophone expects 2 arguments"};
                outcome = kb.is_homophone(args[0], args[1]);
            } else if (fn == "action_type") {
                if (!action_arg || args.size() != 1)
                    return EvalError{expr.line,
                                     "action_type expects (phrase, Action.MEMBER)"};
                outcome = kb.action_type(args[0], *action_arg);
            } else {  // is_synonym
                std::string pattern;
                if (pattern_kwarg) pattern = *pattern_kwarg;
                if (args.size() == 3 && !pattern_kwarg) {
                    pattern = args[2];
                    args.pop_back();
                }
                if (args.size() != 2)
                    return EvalError{expr.line,
                                     "is_synonym expects (phrase, candidate[, pattern])"};
                record.pattern_kwarg = pattern.empty() ? record.pattern_kwarg
                                                       : std::optional<std::string>(pattern);
                outcome = kb.is_synonym(args[0], args[1], pattern);
            }

            record.args = args;
            record.outcome = outcome;
            bool ok = outcome.ok;
            if (trace) trace->push_back(std::move(record));
            return Value(ok);
        }
    }
    return EvalError{expr.line, "unsupported expression"};
}

}  // namespace cryptic
