#pragma once

// Lexer and parser for proof scripts.  Input is the raw formaliser output:
// optional code fences, one function definition with keyword defaults for
// answer/clue/pattern, a docstring carrying definition/wordplay annotations,
// assert statements, and an optional trailing bare invocation.
//
// Control flow, assignments and imports never become statements; they are
// recorded on the script and surface through lint_proof as ControlFlow.

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cryptic/ast.hpp"
#include "cryptic/result.hpp"
#include "cryptic/strings.hpp"

namespace cryptic {

namespace dsl {

enum class TokKind {
    Name, Str, Int,
    LParen, RParen, LBracket, RBracket,
    Colon, Comma, Plus, Minus, Dot,
    EqEq, NotEq, Assign,
    End,
};

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    long num = 0;
    int line = 1;
    int col = 1;
};

struct LogicalLine {
    int line = 1;    // first physical line
    int indent = 0;  // leading whitespace of the first physical line
    std::vector<Token> tokens;
    std::string source;  // physical lines joined, continuations collapsed
};

// Drops surrounding ``` fences if present; the opening fence may carry a
// language tag.  Returns the region between the first fence pair, and the
// physical line offset of that region.
inline std::pair<std::string, int> strip_fences(std::string_view source) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : source) {
            if (c == '\n') { lines.push_back(cur); cur.clear(); }
            else if (c != '\r') cur.push_back(c);
        }
        lines.push_back(cur);
    }
    int first_fence = -1;
    for (size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).rfind("```", 0) == 0) { first_fence = static_cast<int>(i); break; }
    }
    if (first_fence < 0) return {std::string(source), 0};
    std::string body;
    for (size_t i = first_fence + 1; i < lines.size(); ++i) {
        if (trim(lines[i]).rfind("```", 0) == 0) break;
        body += lines[i];
        body.push_back('\n');
    }
    return {body, first_fence + 1};
}

class Lexer {
public:
    Lexer(std::string_view text, int line_offset)
        : text_(text), line_(1 + line_offset) {}

    // Splits the text into logical lines of tokens.  Newlines inside brackets
    // or after a trailing backslash continue the current logical line.
    Result<std::vector<LogicalLine>, ParseError> run() {
        std::vector<LogicalLine> lines;
        LogicalLine cur;
        cur_sink_ = &cur;
        bool line_open = false;
        int depth = 0;

        auto flush = [&]() {
            if (line_open && !cur.tokens.empty()) lines.push_back(cur);
            cur = LogicalLine{};
            line_open = false;
        };

        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                advance();
                if (depth == 0) flush();
                else append_source(' ');
                continue;
            }
            if (c == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
                pos_ += 2;
                ++line_;
                col_ = 1;
                append_source(' ');
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
                if (line_open) append_source(' ');
                continue;
            }
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
                continue;
            }

            if (!line_open) {
                cur.line = line_;
                cur.indent = col_ - 1;
                line_open = true;
            }

            Token tok;
            tok.line = line_;
            tok.col = col_;
            if (c == '"' || c == '\'') {
                auto s = lex_string();
                if (!s.ok()) return s.error();
                tok.kind = TokKind::Str;
                tok.text = s.value();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                tok.kind = TokKind::Int;
                long v = 0;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    v = v * 10 + (text_[pos_] - '0');
                    append_source(text_[pos_]);
                    advance();
                }
                tok.num = v;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                tok.kind = TokKind::Name;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    tok.text.push_back(text_[pos_]);
                    append_source(text_[pos_]);
                    advance();
                }
            } else {
                switch (c) {
                    case '(': tok.kind = TokKind::LParen; ++depth; break;
                    case ')': tok.kind = TokKind::RParen; if (depth > 0) --depth; break;
                    case '[': tok.kind = TokKind::LBracket; ++depth; break;
                    case ']': tok.kind = TokKind::RBracket; if (depth > 0) --depth; break;
                    case ':': tok.kind = TokKind::Colon; break;
                    case ',': tok.kind = TokKind::Comma; break;
                    case '+': tok.kind = TokKind::Plus; break;
                    case '-': tok.kind = TokKind::Minus; break;
                    case '.': tok.kind = TokKind::Dot; break;
                    case '=':
                        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                            tok.kind = TokKind::EqEq;
                            append_source('=');
                            advance();
                        } else {
                            tok.kind = TokKind::Assign;
                        }
                        break;
                    case '!':
                        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                            tok.kind = TokKind::NotEq;
                            append_source('!');
                            advance();
                        } else {
                            return ParseError{line_, col_, "unexpected character '!'"};
                        }
                        break;
                    default:
                        return ParseError{line_, col_,
                                          std::string("unexpected character '") + c + "'"};
                }
                append_source(c);
                advance();
            }
            cur.tokens.push_back(std::move(tok));
        }
        flush();
        return lines;
    }

private:
    void advance() {
        if (text_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }

    void append_source(char c) {
        if (cur_sink_) {
            auto& s = cur_sink_->source;
            if (c == ' ') {
                if (!s.empty() && s.back() != ' ') s.push_back(' ');
            } else {
                s.push_back(c);
            }
        }
    }

    Result<std::string, ParseError> lex_string() {
        char quote = text_[pos_];
        int start_line = line_, start_col = col_;
        bool triple = pos_ + 2 < text_.size() && text_[pos_ + 1] == quote && text_[pos_ + 2] == quote;
        size_t skip = triple ? 3 : 1;
        for (size_t i = 0; i < skip; ++i) { append_source(quote); advance(); }

        std::string value;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (!triple && c == '\n')
                return ParseError{start_line, start_col, "unterminated string literal"};
            if (c == '\\' && pos_ + 1 < text_.size()) {
                char esc = text_[pos_ + 1];
                append_source(c); advance();
                append_source(esc); advance();
                switch (esc) {
                    case 'n': value.push_back('\n'); break;
                    case 't': value.push_back('\t'); break;
                    case '\n': break;  // line continuation inside the literal
                    case '\\': case '\'': case '"': value.push_back(esc); break;
                    default: value.push_back('\\'); value.push_back(esc); break;
                }
                continue;
            }
            if (c == quote) {
                if (!triple) { append_source(c); advance(); return value; }
                if (pos_ + 2 < text_.size() && text_[pos_ + 1] == quote && text_[pos_ + 2] == quote) {
                    for (int i = 0; i < 3; ++i) { append_source(quote); advance(); }
                    return value;
                }
            }
            value.push_back(c);
            append_source(c == '\n' ? ' ' : c);
            advance();
        }
        return ParseError{start_line, start_col, "unterminated string literal"};
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    LogicalLine* cur_sink_ = nullptr;
};

inline const std::vector<std::string>& forbidden_statement_keywords() {
    static const std::vector<std::string> kw = {
        "if", "elif", "else", "for", "while", "try", "except", "finally",
        "with", "import", "from", "return", "raise", "class", "def",
        "global", "nonlocal", "del", "lambda", "yield",
    };
    return kw;
}

class ExprParser {
public:
    ExprParser(const std::vector<Token>& toks, size_t start, int line)
        : toks_(toks), pos_(start), line_(line) {}

    Result<Expr, ParseError> parse_full() {
        auto e = parse_and();
        if (!e.ok()) return e;
        if (!at_end())
            return err("unexpected token after expression");
        return e;
    }

    size_t position() const { return pos_; }

private:
    const Token& peek() const {
        static const Token end_tok{TokKind::End, "", 0, 0, 0};
        return pos_ < toks_.size() ? toks_[pos_] : end_tok;
    }
    bool at_end() const { return pos_ >= toks_.size(); }
    const Token& take() { return toks_[pos_++]; }
    bool match(TokKind k) {
        if (peek().kind == k) { ++pos_; return true; }
        return false;
    }
    ParseError err(std::string msg) const {
        const Token& t = peek();
        return ParseError{t.line ? t.line : line_, t.col, std::move(msg)};
    }

    Result<Expr, ParseError> parse_and() {
        auto left = parse_cmp();
        if (!left.ok()) return left;
        Expr node = left.value();
        while (peek().kind == TokKind::Name && peek().text == "and") {
            int ln = take().line;
            auto right = parse_cmp();
            if (!right.ok()) return right;
            Expr combined;
            combined.kind = ExprKind::Compare;
            combined.cmp = CompareOp::And;
            combined.line = ln;
            combined.children = {std::move(node), right.value()};
            node = std::move(combined);
        }
        return node;
    }

    Result<Expr, ParseError> parse_cmp() {
        auto left = parse_add();
        if (!left.ok()) return left;
        if (peek().kind == TokKind::EqEq || peek().kind == TokKind::NotEq) {
            TokKind op = peek().kind;
            int ln = take().line;
            auto right = parse_add();
            if (!right.ok()) return right;
            if (peek().kind == TokKind::EqEq || peek().kind == TokKind::NotEq)
                return err("chained comparisons are not supported");
            Expr node;
            node.kind = ExprKind::Compare;
            node.cmp = op == TokKind::EqEq ? CompareOp::Eq : CompareOp::Neq;
            node.line = ln;
            node.children = {left.value(), right.value()};
            return node;
        }
        return left;
    }

    Result<Expr, ParseError> parse_add() {
        auto left = parse_postfix();
        if (!left.ok()) return left;
        Expr node = left.value();
        while (peek().kind == TokKind::Plus) {
            int ln = take().line;
            auto right = parse_postfix();
            if (!right.ok()) return right;
            Expr combined;
            combined.kind = ExprKind::Concat;
            combined.line = ln;
            combined.children = {std::move(node), right.value()};
            node = std::move(combined);
        }
        return node;
    }

    Result<Expr, ParseError> parse_postfix() {
        auto base = parse_atom();
        if (!base.ok()) return base;
        Expr node = base.value();
        while (peek().kind == TokKind::LBracket) {
            int ln = take().line;
            std::optional<long> lo, hi;
            bool saw_colon = false;
            if (peek().kind != TokKind::Colon) {
                auto v = parse_slice_bound();
                if (!v.ok()) return v.error();
                lo = v.value();
            }
            if (match(TokKind::Colon)) {
                saw_colon = true;
                if (peek().kind != TokKind::RBracket) {
                    auto v = parse_slice_bound();
                    if (!v.ok()) return v.error();
                    hi = v.value();
                }
            }
            if (!match(TokKind::RBracket)) return err("expected ']' to close slice");
            if (!saw_colon) return err("plain indexing is not supported; use a slice like [1:]");
            if (peek().kind == TokKind::Colon)
                return err("slice step is not supported");
            Expr sliced;
            sliced.kind = ExprKind::Slice;
            sliced.line = ln;
            sliced.slice_lo = lo;
            sliced.slice_hi = hi;
            sliced.children = {std::move(node)};
            node = std::move(sliced);
        }
        return node;
    }

    Result<long, ParseError> parse_slice_bound() {
        bool neg = match(TokKind::Minus);
        if (peek().kind != TokKind::Int) return err("expected integer slice bound");
        long v = take().num;
        return neg ? -v : v;
    }

    Result<Expr, ParseError> parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::Str: {
                Expr e;
                e.kind = ExprKind::StrLit;
                e.text = t.text;
                e.line = t.line;
                ++pos_;
                return e;
            }
            case TokKind::Int: {
                Expr e;
                e.kind = ExprKind::IntLit;
                e.int_value = t.num;
                e.line = t.line;
                ++pos_;
                return e;
            }
            case TokKind::Minus: {
                ++pos_;
                if (peek().kind != TokKind::Int) return err("expected integer after '-'");
                Expr e;
                e.kind = ExprKind::IntLit;
                e.int_value = -take().num;
                e.line = t.line;
                return e;
            }
            case TokKind::LParen: {
                ++pos_;
                auto inner = parse_and();
                if (!inner.ok()) return inner;
                if (!match(TokKind::RParen)) return err("expected ')'");
                return inner;
            }
            case TokKind::Name: {
                if (t.text == "True" || t.text == "False") {
                    Expr e;
                    e.kind = ExprKind::BoolLit;
                    e.bool_value = t.text == "True";
                    e.line = t.line;
                    ++pos_;
                    return e;
                }
                std::string name = t.text;
                int ln = t.line;
                ++pos_;
                if (peek().kind == TokKind::Dot) {
                    ++pos_;
                    if (peek().kind != TokKind::Name)
                        return err("expected name after '.'");
                    std::string member = take().text;
                    if (name != "Action")
                        return err("attribute access is only supported on Action");
                    auto action = parse_action(member);
                    if (!action)
                        return ParseError{ln, t.col,
                                          "unknown Action member 'Action." + member + "'"};
                    Expr e;
                    e.kind = ExprKind::EnumRef;
                    e.action = *action;
                    e.line = ln;
                    return e;
                }
                if (peek().kind == TokKind::LParen) {
                    ++pos_;
                    Expr call;
                    call.kind = ExprKind::Call;
                    call.text = name;
                    call.line = ln;
                    bool saw_kwarg = false;
                    if (peek().kind != TokKind::RParen) {
                        while (true) {
                            if (peek().kind == TokKind::Name && pos_ + 1 < toks_.size() &&
                                toks_[pos_ + 1].kind == TokKind::Assign) {
                                std::string kw = take().text;
                                take();  // '='
                                auto v = parse_and();
                                if (!v.ok()) return v;
                                call.kwargs.emplace_back(std::move(kw), v.value());
                                saw_kwarg = true;
                            } else {
                                if (saw_kwarg)
                                    return err("positional argument after keyword argument");
                                auto v = parse_and();
                                if (!v.ok()) return v;
                                call.children.push_back(v.value());
                            }
                            if (match(TokKind::Comma)) continue;
                            break;
                        }
                    }
                    if (!match(TokKind::RParen)) return err("expected ')' to close call");
                    return call;
                }
                Expr e;
                e.kind = ExprKind::Ident;
                e.text = name;
                e.line = ln;
                return e;
            }
            default:
                return err("expected expression");
        }
    }

    const std::vector<Token>& toks_;
    size_t pos_;
    int line_;
};

}  // namespace dsl

// ---------------------------------------------------------------------------

inline Result<ProofScript, ParseError> parse_proof(std::string_view source) {
    using dsl::LogicalLine;
    using dsl::TokKind;

    auto [body, offset] = dsl::strip_fences(source);
    dsl::Lexer lexer(body, offset);
    auto lexed = lexer.run();
    if (!lexed.ok()) return lexed.error();
    const std::vector<LogicalLine>& lines = lexed.value();

    // Locate the function definition.
    size_t def_idx = lines.size();
    for (size_t i = 0; i < lines.size(); ++i) {
        if (!lines[i].tokens.empty() && lines[i].tokens[0].kind == TokKind::Name &&
            lines[i].tokens[0].text == "def") {
            def_idx = i;
            break;
        }
    }
    if (def_idx == lines.size())
        return ParseError{1, 1, "no proof function definition found", true};

    const LogicalLine& def = lines[def_idx];
    const auto& dt = def.tokens;
    // def NAME ( kw = "..." , ... ) :
    size_t p = 1;
    if (p >= dt.size() || dt[p].kind != TokKind::Name)
        return ParseError{def.line, 1, "expected function name after 'def'"};
    ++p;
    if (p >= dt.size() || dt[p].kind != TokKind::LParen)
        return ParseError{def.line, 1, "expected '(' in function definition"};
    ++p;

    std::optional<std::string> answer, clue, pattern;
    while (p < dt.size() && dt[p].kind != TokKind::RParen) {
        if (dt[p].kind != TokKind::Name)
            return ParseError{dt[p].line, dt[p].col, "expected parameter name"};
        std::string pname = dt[p].text;
        ++p;
        if (p >= dt.size() || dt[p].kind != TokKind::Assign)
            return ParseError{def.line, 1,
                              "parameter '" + pname + "' must have a default value", false};
        ++p;
        if (p >= dt.size() || dt[p].kind != TokKind::Str)
            return ParseError{def.line, 1,
                              "default for parameter '" + pname + "' must be a string literal"};
        std::string value = dt[p].text;
        ++p;
        if (pname == "answer") answer = value;
        else if (pname == "clue") clue = value;
        else if (pname == "pattern") pattern = value;
        if (p < dt.size() && dt[p].kind == TokKind::Comma) ++p;
    }
    if (p >= dt.size() || dt[p].kind != TokKind::RParen)
        return ParseError{def.line, 1, "expected ')' in function definition"};
    ++p;
    if (p >= dt.size() || dt[p].kind != TokKind::Colon)
        return ParseError{def.line, 1, "expected ':' after function definition"};
    if (p + 1 != dt.size())
        return ParseError{def.line, 1, "unexpected tokens after ':'"};

    if (!answer || !clue || !pattern)
        return ParseError{def.line, 1,
                          "function definition lacks keyword defaults for answer, clue and pattern",
                          true};

    ProofScript script;
    script.def_line = def.line;
    script.answer = normalise_answer(*answer);
    if (script.answer.empty())
        return ParseError{def.line, 1, "answer must not be empty"};
    for (char c : script.answer)
        if (!((c >= 'A' && c <= 'Z') || c == ' ' || c == '-'))
            return ParseError{def.line, 1,
                              "answer may contain only letters, spaces and hyphens"};
    script.clue = to_lower(trim(*clue));
    {
        std::string pat = trim(*pattern);
        if (pat.size() >= 2 && pat.front() == '(' && pat.back() == ')')
            pat = trim(pat.substr(1, pat.size() - 2));
        script.pattern = pat;
    }

    // Body: indented lines following the def.  The first may be a docstring.
    size_t i = def_idx + 1;
    bool first_body_line = true;
    for (; i < lines.size(); ++i) {
        const LogicalLine& ll = lines[i];
        if (ll.indent <= def.indent) break;
        const auto& toks = ll.tokens;

        if (first_body_line && toks.size() == 1 && toks[0].kind == TokKind::Str) {
            // Docstring: pull out the annotation lines.
            std::string pending;
            for (const auto& raw : split_on(toks[0].text, "\n")) {
                std::string line = trim(raw);
                bool continued = !line.empty() && line.back() == '\\';
                if (continued) line = trim(line.substr(0, line.size() - 1));
                if (!pending.empty()) {
                    pending += " " + line;
                    if (!continued) {
                        if (pending.rfind("definition:", 0) == 0 &&
                            script.definition_annotation.empty())
                            script.definition_annotation = trim(pending.substr(11));
                        else if (pending.rfind("wordplay:", 0) == 0 &&
                                 script.wordplay_annotation.empty())
                            script.wordplay_annotation = trim(pending.substr(9));
                        pending.clear();
                    }
                    continue;
                }
                if (line.rfind("definition:", 0) == 0 || line.rfind("wordplay:", 0) == 0) {
                    if (continued) { pending = line; continue; }
                    if (line.rfind("definition:", 0) == 0 && script.definition_annotation.empty())
                        script.definition_annotation = trim(line.substr(11));
                    else if (line.rfind("wordplay:", 0) == 0 && script.wordplay_annotation.empty())
                        script.wordplay_annotation = trim(line.substr(9));
                }
            }
            first_body_line = false;
            continue;
        }
        first_body_line = false;

        if (toks.empty()) continue;

        // Forbidden statement forms are recorded, not parsed.
        if (toks[0].kind == TokKind::Name) {
            const std::string& head = toks[0].text;
            if (head == "pass") continue;  // inert filler
            const auto& forbidden = dsl::forbidden_statement_keywords();
            if (std::find(forbidden.begin(), forbidden.end(), head) != forbidden.end()) {
                std::string what =
                    (head == "import" || head == "from") ? "import statements are not allowed"
                                                         : "control flow is not allowed ('" + head + "')";
                script.parse_lints.push_back({LintCode::ControlFlow, ll.line, what});
                continue;
            }
        }
        {
            bool has_assign = false;
            int depth = 0;
            for (const auto& t : toks) {
                if (t.kind == TokKind::LParen || t.kind == TokKind::LBracket) ++depth;
                else if (t.kind == TokKind::RParen || t.kind == TokKind::RBracket) --depth;
                else if (t.kind == TokKind::Assign && depth == 0) { has_assign = true; break; }
            }
            if (has_assign) {
                script.parse_lints.push_back(
                    {LintCode::ControlFlow, ll.line, "assignments are not allowed"});
                continue;
            }
        }

        if (toks[0].kind == TokKind::Name && toks[0].text == "assert") {
            dsl::ExprParser ep(toks, 1, ll.line);
            auto expr = ep.parse_full();
            if (!expr.ok()) return expr.error();
            Statement st;
            st.kind = StatementKind::Assert;
            st.expr = expr.value();
            st.line = ll.line;
            st.source = ll.source;
            script.statements.push_back(std::move(st));
            continue;
        }

        // Anything else must be a bare expression; only calls are meaningful.
        dsl::ExprParser ep(toks, 0, ll.line);
        auto expr = ep.parse_full();
        if (!expr.ok()) return expr.error();
        if (expr.value().kind != ExprKind::Call)
            return ParseError{ll.line, 1, "unsupported statement"};
        Statement st;
        st.kind = StatementKind::BareCall;
        st.expr = expr.value();
        st.line = ll.line;
        st.source = ll.source;
        script.statements.push_back(std::move(st));
    }

    // Trailing lines: tolerate bare no-argument invocations, reject the rest.
    for (; i < lines.size(); ++i) {
        const auto& toks = lines[i].tokens;
        if (toks.size() == 3 && toks[0].kind == TokKind::Name &&
            toks[1].kind == TokKind::LParen && toks[2].kind == TokKind::RParen)
            continue;
        return ParseError{lines[i].line, 1, "unexpected content after function body"};
    }

    return script;
}

// canonical rendering --------------------------------------------------------

namespace dsl {

enum class QuoteStyle { Double, Single };

inline std::string quote_string(std::string_view s, QuoteStyle q) {
    char quote = q == QuoteStyle::Double ? '"' : '\'';
    std::string out(1, quote);
    for (char c : s) {
        if (c == quote || c == '\\') out.push_back('\\');
        if (c == '\n') { out += "\\n"; continue; }
        out.push_back(c);
    }
    out.push_back(quote);
    return out;
}

// Precedence: and < comparison < concatenation < postfix/atom.
inline int precedence(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Compare: return e.cmp == CompareOp::And ? 1 : 2;
        case ExprKind::Concat: return 3;
        default: return 4;
    }
}

inline std::string render_expr(const Expr& e, QuoteStyle q) {
    auto child = [&](const Expr& c, int min_prec) {
        std::string s = render_expr(c, q);
        if (precedence(c) < min_prec) return "(" + s + ")";
        return s;
    };
    switch (e.kind) {
        case ExprKind::StrLit: return quote_string(e.text, q);
        case ExprKind::IntLit: return std::to_string(e.int_value);
        case ExprKind::BoolLit: return e.bool_value ? "True" : "False";
        case ExprKind::Ident: return e.text;
        case ExprKind::EnumRef: return "Action." + std::string(action_name(e.action));
        case ExprKind::Call: {
            std::string out = e.text + "(";
            bool first = true;
            for (const auto& a : e.children) {
                if (!first) out += ", ";
                out += render_expr(a, q);
                first = false;
            }
            for (const auto& [k, v] : e.kwargs) {
                if (!first) out += ", ";
                out += k + "=" + render_expr(v, q);
                first = false;
            }
            return out + ")";
        }
        case ExprKind::Concat:
            return child(e.children[0], 3) + " + " + child(e.children[1], 4);
        case ExprKind::Slice: {
            std::string out = child(e.children[0], 4);
            out += "[";
            if (e.slice_lo) out += std::to_string(*e.slice_lo);
            out += ":";
            if (e.slice_hi) out += std::to_string(*e.slice_hi);
            out += "]";
            return out;
        }
        case ExprKind::Compare: {
            switch (e.cmp) {
                case CompareOp::And:
                    return child(e.children[0], 1) + " and " + child(e.children[1], 2);
                case CompareOp::Eq:
                    return child(e.children[0], 3) + " == " + child(e.children[1], 3);
                case CompareOp::Neq:
                    return child(e.children[0], 3) + " != " + child(e.children[1], 3);
            }
            return "";
        }
    }
    return "";
}

}  // namespace dsl

// Regenerates canonical source for a script.  parse_proof on the result
// reproduces the script structurally.
inline std::string render_proof(const ProofScript& script) {
    std::string out = "def proof(answer=" + dsl::quote_string(script.answer, dsl::QuoteStyle::Double) +
                      ", clue=" + dsl::quote_string(script.clue, dsl::QuoteStyle::Double) +
                      ", pattern='" + script.pattern + "'):\n";
    out += "  \"\"\"\n";
    if (!script.definition_annotation.empty())
        out += "  definition: " + script.definition_annotation + "\n";
    if (!script.wordplay_annotation.empty())
        out += "  wordplay: " + script.wordplay_annotation + "\n";
    out += "  \"\"\"\n";
    for (const auto& st : script.statements) {
        if (st.kind == StatementKind::Assert)
            out += "  assert " + dsl::render_expr(st.expr, dsl::QuoteStyle::Double) + "\n";
        else
            out += "  " + dsl::render_expr(st.expr, dsl::QuoteStyle::Double) + "\n";
    }
    out += "proof()\n";
    return out;
}

}  // namespace cryptic
