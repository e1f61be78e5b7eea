#include <algorithm>
#include <cctype>
#include <sstream>

#include "tqp/errors.hpp"
#include "tqp/lang.hpp"

namespace tqp::lang {

const char* diag_code_name(DiagCode code) {
    switch (code) {
    case DiagCode::E001: return "E001";
    case DiagCode::E002: return "E002";
    case DiagCode::E101: return "E101";
    case DiagCode::E102: return "E102";
    case DiagCode::E103: return "E103";
    case DiagCode::E104: return "E104";
    }
    return "E???";
}

const ModelDecl& Program::model() const {
    for (const Decl& d : decls)
        if (const auto* m = std::get_if<ModelDecl>(&d))
            return *m;
    throw Error("program has no model declaration");
}

const ConfigDecl& Program::config() const {
    for (const Decl& d : decls)
        if (const auto* c = std::get_if<ConfigDecl>(&d))
            return *c;
    throw Error("program has no config declaration");
}

namespace {

enum class Tok {
    kw_model, kw_config, kw_of, kw_total, kw_start, kw_gate, kw_apply,
    kw_emit, kw_unitary, kw_state, kw_measure, kw_edge,
    name, integer, string, caret, minus, equals, semicolon, eof,
};

struct Token {
    Tok kind = Tok::eof;
    std::string text;
    long long value = 0;
    Span span;
};

constexpr long long kMaxLiteral = 1000000000000LL;
constexpr long long kMaxStrandIndex = 1 << 30; // int-safe clamp for s<digits>


struct Lexer {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;
    std::vector<Diagnostic> diags;

    explicit Lexer(const std::string& s) : src(s) {}

    char peek() const { return pos < src.size() ? src[pos] : '\0'; }
    bool done() const { return pos >= src.size(); }

    void advance() {
        if (pos < src.size()) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void error(DiagCode code, Span span, std::string message) {
        diags.push_back(Diagnostic{code, std::move(message), span});
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            // skip whitespace and line comments
            while (!done()) {
                const char c = peek();
                if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                    advance();
                } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
                    while (!done() && peek() != '\n')
                        advance();
                } else {
                    break;
                }
            }
            if (done()) {
                // Anchor EOF just past the last token so end-of-input
                // diagnostics always point into the text.
                Span eof{1, 1, 0};
                if (!out.empty()) {
                    const Span& last = out.back().span;
                    eof = Span{last.line, last.col + std::max(last.len, 1), 0};
                }
                out.push_back(Token{Tok::eof, "", 0, eof});
                return out;
            }
            const Span start{line, col, 1};
            const char c = peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string word;
                Span span = start;
                while (!done()) {
                    const char ch = peek();
                    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
                        word.push_back(ch);
                        advance();
                    } else {
                        break;
                    }
                }
                span.len = static_cast<int>(word.size());
                Tok kind = Tok::name;
                if (word == "model") kind = Tok::kw_model;
                else if (word == "config") kind = Tok::kw_config;
                else if (word == "of") kind = Tok::kw_of;
                else if (word == "total") kind = Tok::kw_total;
                else if (word == "start") kind = Tok::kw_start;
                else if (word == "gate") kind = Tok::kw_gate;
                else if (word == "apply") kind = Tok::kw_apply;
                else if (word == "emit") kind = Tok::kw_emit;
                else if (word == "unitary") kind = Tok::kw_unitary;
                else if (word == "state") kind = Tok::kw_state;
                else if (word == "measure") kind = Tok::kw_measure;
                else if (word == "edge") kind = Tok::kw_edge;
                out.push_back(Token{kind, word, 0, span});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                Span span = start;
                bool overflow = false;
                long long value = 0;
                while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
                    digits.push_back(peek());
                    value = value * 10 + (peek() - '0');
                    if (value > kMaxLiteral)
                        overflow = true;
                    advance();
                }
                span.len = static_cast<int>(digits.size());
                if (overflow) {
                    error(DiagCode::E001, span, "integer literal too large");
                    return out;
                }
                out.push_back(Token{Tok::integer, digits, value, span});
            } else if (c == '"') {
                Span span = start;
                advance();
                std::string text;
                bool closed = false;
                while (!done()) {
                    const char ch = peek();
                    if (ch == '"') {
                        advance();
                        closed = true;
                        break;
                    }
                    if (ch == '\\') {
                        advance();
                        if (done())
                            break;
                        const char esc = peek();
                        if (esc == '"' || esc == '\\') {
                            text.push_back(esc);
                            advance();
                        } else {
                            error(DiagCode::E001, Span{line, col, 1}, "unknown escape in string literal");
                            return out;
                        }
                    } else if (ch == '\n') {
                        break;
                    } else {
                        text.push_back(ch);
                        advance();
                    }
                }
                if (!closed) {
                    error(DiagCode::E001, span, "unterminated string literal");
                    return out;
                }
                span.len = col - span.col; // same line by construction
                out.push_back(Token{Tok::string, text, 0, span});
            } else if (c == '^') {
                advance();
                out.push_back(Token{Tok::caret, "^", 0, start});
            } else if (c == '-') {
                advance();
                out.push_back(Token{Tok::minus, "-", 0, start});
            } else if (c == '=') {
                advance();
                out.push_back(Token{Tok::equals, "=", 0, start});
            } else if (c == ';') {
                advance();
                out.push_back(Token{Tok::semicolon, ";", 0, start});
            } else {
                std::ostringstream os;
                os << "unexpected byte 0x" << std::hex << (static_cast<unsigned>(c) & 0xffu);
                error(DiagCode::E001, start, os.str());
                return out;
            }
        }
    }
};

struct Parser {
    const std::vector<Token>& tokens;
    std::size_t idx = 0;
    std::vector<Diagnostic> diags;

    explicit Parser(const std::vector<Token>& t) : tokens(t) {}

    const Token& cur() const { return tokens[idx]; }
    const Token& next() { return tokens[idx++]; }
    bool at(Tok kind) const { return cur().kind == kind; }

    void error(const Token& tok, const std::string& message) {
        diags.push_back(Diagnostic{DiagCode::E002, message, tok.span});
    }

    bool expect(Tok kind, const char* what) {
        if (at(kind)) {
            ++idx;
            return true;
        }
        error(cur(), std::string("expected ") + what);
        return false;
    }

    // True when a name token looks like a generator reference s<digits>.
    static bool is_sigma_name(const std::string& text) {
        if (text.size() < 2 || text[0] != 's')
            return false;
        for (std::size_t i = 1; i < text.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                return false;
        return true;
    }

    bool parse_exponent(Atom& atom) {
        if (!at(Tok::caret))
            return true;
        ++idx;
        long long sign = 1;
        if (at(Tok::minus)) {
            ++idx;
            sign = -1;
        }
        if (!at(Tok::integer)) {
            error(cur(), "expected an integer exponent after '^'");
            return false;
        }
        atom.exponent = static_cast<long>(sign * next().value);
        return true;
    }

    bool parse_word(Word& word) {
        word.span = cur().span;
        while (at(Tok::name)) {
            Token tok = next();
            Atom atom;
            atom.span = tok.span;
            if (is_sigma_name(tok.text)) {
                atom.is_sigma = true;
                long long v = 0;
                for (std::size_t i = 1; i < tok.text.size(); ++i) {
                    v = v * 10 + (tok.text[i] - '0');
                    if (v > kMaxStrandIndex)
                        break;
                }
                // out-of-range indices surface as E102 at typecheck
                atom.sigma_index = static_cast<int>(std::min(v, kMaxStrandIndex));
            } else {
                atom.name = tok.text;
            }
            if (!parse_exponent(atom))
                return false;
            word.atoms.push_back(std::move(atom));
        }
        if (word.atoms.empty()) {
            error(cur(), "expected a braid word (s<i> or a gate name)");
            return false;
        }
        return true;
    }

    std::optional<Program> run() {
        Program program;
        int models = 0;
        int configs = 0;
        while (!at(Tok::eof)) {
            const Token tok = cur();
            switch (tok.kind) {
            case Tok::kw_model: {
                ++idx;
                ModelDecl decl;
                decl.span = tok.span;
                if (at(Tok::name)) {
                    decl.name_or_path = next().text;
                } else if (at(Tok::string)) {
                    decl.is_path = true;
                    decl.name_or_path = next().text;
                } else {
                    error(cur(), "expected a model name or a quoted path");
                    return std::nullopt;
                }
                if (!expect(Tok::semicolon, "';'"))
                    return std::nullopt;
                ++models;
                if (models > 1) {
                    error(tok, "duplicate model declaration");
                    return std::nullopt;
                }
                program.decls.push_back(std::move(decl));
                break;
            }
            case Tok::kw_config: {
                ++idx;
                ConfigDecl decl;
                decl.span = tok.span;
                if (!at(Tok::integer)) {
                    error(cur(), "expected the number of strands");
                    return std::nullopt;
                }
                decl.count = static_cast<long>(next().value);
                if (!expect(Tok::kw_of, "'of'"))
                    return std::nullopt;
                if (at(Tok::name) || at(Tok::integer)) {
                    decl.species_span = cur().span;
                    decl.species = next().text;
                } else {
                    error(cur(), "expected a species label");
                    return std::nullopt;
                }
                if (!expect(Tok::kw_total, "'total'"))
                    return std::nullopt;
                if (at(Tok::name) || at(Tok::integer)) {
                    decl.total_span = cur().span;
                    decl.total = next().text;
                } else {
                    error(cur(), "expected a total charge label");
                    return std::nullopt;
                }
                if (!expect(Tok::semicolon, "';'"))
                    return std::nullopt;
                ++configs;
                if (configs > 1) {
                    error(tok, "duplicate config declaration");
                    return std::nullopt;
                }
                program.decls.push_back(std::move(decl));
                break;
            }
            case Tok::kw_start: {
                ++idx;
                StartDecl decl;
                decl.span = tok.span;
                if (!at(Tok::integer)) {
                    error(cur(), "expected a basis index");
                    return std::nullopt;
                }
                decl.index = static_cast<long>(next().value);
                if (!expect(Tok::semicolon, "';'"))
                    return std::nullopt;
                program.decls.push_back(decl);
                break;
            }
            case Tok::kw_gate: {
                ++idx;
                GateDecl decl;
                decl.span = tok.span;
                if (!at(Tok::name)) {
                    error(cur(), "expected a gate name");
                    return std::nullopt;
                }
                if (is_sigma_name(cur().text)) {
                    error(cur(), "gate name collides with generator syntax s<i>");
                    return std::nullopt;
                }
                decl.name = next().text;
                if (!expect(Tok::equals, "'='"))
                    return std::nullopt;
                if (!parse_word(decl.word))
                    return std::nullopt;
                if (!expect(Tok::semicolon, "';'"))
                    return std::nullopt;
                program.decls.push_back(std::move(decl));
                break;
            }
            case Tok::kw_apply: {
                ++idx;
                ApplyStmt stmt;
                stmt.span = tok.span;
                if (!parse_word(stmt.word))
                    return std::nullopt;
                if (!expect(Tok::semicolon, "';'"))
                    return std::nullopt;
                program.decls.push_back(std::move(stmt));
                break;
            }
            case Tok::kw_emit: {
                ++idx;
                EmitStmt stmt;
                stmt.span = tok.span;
                if (at(Tok::kw_unitary)) {
                    stmt.kind = EmitStmt::Kind::unitary;
                    ++idx;
                } else if (at(Tok::kw_state)) {
                    stmt.kind = EmitStmt::Kind::state;
                    ++idx;
                } else {
                    error(cur(), "expected 'unitary' or 'state'");
                    return std::nullopt;
                }
                if (!expect(Tok::semicolon, "';'"))
                    return std::nullopt;
                program.decls.push_back(stmt);
                break;
            }
            case Tok::kw_measure: {
                ++idx;
                MeasureStmt stmt;
                stmt.span = tok.span;
                if (!expect(Tok::kw_edge, "'edge'"))
                    return std::nullopt;
                if (!at(Tok::integer)) {
                    error(cur(), "expected an edge index");
                    return std::nullopt;
                }
                stmt.edge = static_cast<long>(next().value);
                if (!expect(Tok::semicolon, "';'"))
                    return std::nullopt;
                program.decls.push_back(stmt);
                break;
            }
            default:
                error(tok, "expected a declaration (model, config, start, gate, apply, emit, measure)");
                return std::nullopt;
            }
        }
        if (models == 0) {
            error(cur(), "program has no model declaration");
            return std::nullopt;
        }
        if (configs == 0) {
            error(cur(), "program has no config declaration");
            return std::nullopt;
        }
        return program;
    }
};

} // namespace

ParseResult parse(const std::string& source) {
    ParseResult result;
    Lexer lexer(source);
    std::vector<Token> tokens = lexer.run();
    if (!lexer.diags.empty()) {
        result.diagnostics = std::move(lexer.diags);
        return result;
    }
    Parser parser(tokens);
    std::optional<Program> program = parser.run();
    if (!program.has_value() || !parser.diags.empty()) {
        result.diagnostics = std::move(parser.diags);
        if (result.diagnostics.empty())
            result.diagnostics.push_back(Diagnostic{DiagCode::E002, "parse failure", Span{1, 1, 0}});
        return result;
    }
    result.program = std::move(program);
    return result;
}

} // namespace tqp::lang
