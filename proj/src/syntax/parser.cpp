#include <cctype>
#include <sstream>

#include "bqc/syntax.hpp"

namespace bqc {

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
    return out;
}

}  // namespace

ParseError::ParseError(std::size_t l, std::size_t c, std::vector<std::string> exp, std::string f)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) +
                         ": expected " + join(exp) + ", found " + f),
      line(l), column(c), expected(std::move(exp)), found(std::move(f)) {}

bool is_keyword(std::string_view s) { return s == "bot" || s == "top" || s == "all" || s == "ex"; }

bool is_identifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, And, Or, Arrow, Turnstile, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        std::size_t l = line, cl = col;
        auto push = [&](Tok k, std::size_t n) {
            out.push_back({k, std::string(src.substr(i, n)), l, cl});
            advance(n);
        };
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            push(Tok::Ident, j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::Number, j - i);
        } else if (c == '(') push(Tok::LParen, 1);
        else if (c == ')') push(Tok::RParen, 1);
        else if (c == ',') push(Tok::Comma, 1);
        else if (c == '&') push(Tok::And, 1);
        else if (c == '|') push(Tok::Or, 1);
        else if (src.substr(i, 2) == "->") push(Tok::Arrow, 2);
        else if (src.substr(i, 2) == "=>") push(Tok::Turnstile, 2);
        else throw ParseError(l, cl, {"a formula token"}, "'" + std::string(1, c) + "'");
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string_view src, Signature& sig) : toks_(lex(src)), sig_(sig) {}

    Formula formula() {
        Formula f = conj();
        while (peek().kind == Tok::Or) {
            ++pos_;
            f = f_or(f, conj());
        }
        return f;
    }

    Sequent sequent() {
        Formula l = formula();
        expect(Tok::Turnstile, "'=>'");
        Formula r = formula();
        return {l, r};
    }

    void finish() {
        if (peek().kind != Tok::End) fail({"end of input"});
    }

    const Token& peek() const { return toks_[pos_]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, std::move(expected), describe(t));
    }

private:
    Token expect(Tok k, const char* what) {
        if (peek().kind != k) fail({what});
        return toks_[pos_++];
    }

    bool at_keyword(const char* kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

    std::string variable() {
        if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail({"variable"});
        return toks_[pos_++].text;
    }

    Formula conj() {
        Formula f = unary();
        while (peek().kind == Tok::And) {
            ++pos_;
            f = f_and(f, unary());
        }
        return f;
    }

    Formula implication_tail(std::vector<std::string> vars) {
        Formula ant = formula();
        expect(Tok::Arrow, "'->'");
        Formula cons = formula();
        expect(Tok::RParen, "')'");
        return f_allimp(std::move(vars), ant, cons);
    }

    Formula unary() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            ++pos_;
            Formula f = formula();
            if (peek().kind == Tok::Arrow) {
                ++pos_;
                Formula cons = formula();
                expect(Tok::RParen, "')'");
                return f_imp(f, cons);
            }
            if (peek().kind != Tok::RParen) fail({"'->'", "')'"});
            ++pos_;
            return f;
        }
        if (t.kind != Tok::Ident) fail({"formula"});
        if (at_keyword("bot")) { ++pos_; return f_bot(); }
        if (at_keyword("top")) { ++pos_; return f_top(); }
        if (at_keyword("ex")) {
            ++pos_;
            std::string v = variable();
            return f_exists(v, unary());
        }
        if (at_keyword("all")) {
            ++pos_;
            std::vector<std::string> vars;
            while (peek().kind == Tok::Ident) {
                const Token& vt = peek();
                std::string v = variable();
                for (const auto& w : vars)
                    if (w == v) throw ParseError(vt.line, vt.column, {"distinct variable"}, "'" + v + "'");
                vars.push_back(v);
            }
            expect(Tok::LParen, "'('");
            return implication_tail(std::move(vars));
        }
        return atom();
    }

    Formula atom() {
        Token name = toks_[pos_++];
        std::vector<LTerm> args;
        if (peek().kind == Tok::LParen) {
            ++pos_;
            if (peek().kind != Tok::RParen) {
                while (true) {
                    const Token& a = peek();
                    if (a.kind == Tok::Number) {
                        args.push_back(Num{Nat(a.text, 10)});
                        ++pos_;
                    } else if (a.kind == Tok::Ident && !is_keyword(a.text)) {
                        args.push_back(Var{a.text});
                        ++pos_;
                    } else {
                        fail({"variable", "number"});
                    }
                    if (peek().kind == Tok::Comma) {
                        ++pos_;
                        continue;
                    }
                    break;
                }
            }
            expect(Tok::RParen, "')'");
        }
        auto it = sig_.arities.find(name.text);
        if (it == sig_.arities.end()) {
            if (!sig_.open)
                throw ParseError(name.line, name.column, {"declared predicate"}, "'" + name.text + "'");
            sig_.arities.emplace(name.text, args.size());
        } else if (it->second != args.size()) {
            throw ParseError(name.line, name.column,
                             {std::to_string(it->second) + " arguments for " + name.text},
                             std::to_string(args.size()));
        }
        return f_atom(name.text, std::move(args));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Signature& sig_;
};

}  // namespace

Formula parse_formula(std::string_view text, Signature& sig) {
    Parser p(text, sig);
    Formula f = p.formula();
    p.finish();
    return f;
}

Sequent parse_sequent(std::string_view text, Signature& sig) {
    Parser p(text, sig);
    Sequent s = p.sequent();
    p.finish();
    return s;
}

VarList parse_var_list(std::string_view text) {
    VarList out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (!is_identifier(cur) || is_keyword(cur))
            throw std::invalid_argument("bad variable name '" + cur + "'");
        out.push_back(cur);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) flush();
        else cur.push_back(c);
    }
    flush();
    if (!distinct(out)) throw std::invalid_argument("repeated variable in list");
    return out;
}

}  // namespace bqc
