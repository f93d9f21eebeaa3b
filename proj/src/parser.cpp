#include "arithdyn/parser.hpp"

#include <cctype>

namespace arithdyn {

namespace {

struct Token {
    enum Kind { Int, Name, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
    std::string text;
    size_t pos;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        size_t at = i_;
        if (i_ >= s_.size()) return {Token::End, "", at};
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            Token t{Token::Int, s_.substr(i_, j - i_), at};
            i_ = j;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            Token t{Token::Name, s_.substr(i_, j - i_), at};
            i_ = j;
            return t;
        }
        ++i_;
        switch (c) {
            case '+': return {Token::Plus, "+", at};
            case '-': return {Token::Minus, "-", at};
            case '*': return {Token::Star, "*", at};
            case '^': return {Token::Caret, "^", at};
            case '/': return {Token::Slash, "/", at};
            case '(': return {Token::LParen, "(", at};
            case ')': return {Token::RParen, ")", at};
            default: throw ParseError(at, std::string("unexpected character '") + c + "'");
        }
    }

  private:
    const std::string& s_;
    size_t i_ = 0;
};

class Parser {
  public:
    Parser(const std::string& s, const std::vector<std::string>& vars)
        : lexer_(s), vars_(vars), nvars_(static_cast<int>(vars.size())) {
        advance();
    }

    Poly parse() {
        Poly p = expr();
        if (cur_.kind != Token::End) throw ParseError(cur_.pos, "trailing input");
        return p;
    }

  private:
    void advance() { cur_ = lexer_.next(); }

    bool accept(Token::Kind k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }

    Poly expr() {
        Poly p = term();
        while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
            bool minus = cur_.kind == Token::Minus;
            advance();
            Poly t = term();
            p = minus ? p - t : p + t;
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        while (accept(Token::Star)) p = p * factor();
        return p;
    }

    Poly factor() {
        if (accept(Token::Minus)) return -factor();
        Poly base = atom();
        if (accept(Token::Caret)) {
            if (cur_.kind != Token::Int)
                throw ParseError(cur_.pos, "'^' needs a nonnegative integer literal");
            unsigned long e = std::stoul(cur_.text);
            advance();
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Poly atom() {
        if (cur_.kind == Token::Int) {
            std::string numtext = cur_.text;
            size_t at = cur_.pos;
            advance();
            if (accept(Token::Slash)) {
                if (cur_.kind != Token::Int)
                    throw ParseError(cur_.pos, "expected integer denominator");
                std::string dentext = cur_.text;
                advance();
                if (Int(dentext) == 0) throw ParseError(at, "zero denominator");
                Rat q{Int(numtext), Int(dentext)};
                q.canonicalize();
                return Poly::constant(nvars_, q);
            }
            return Poly::constant(nvars_, Rat(Int(numtext)));
        }
        if (cur_.kind == Token::Name) {
            for (int i = 0; i < nvars_; ++i) {
                if (vars_[i] == cur_.text) {
                    advance();
                    return Poly::variable(nvars_, i);
                }
            }
            throw ParseError(cur_.pos, "unknown variable name '" + cur_.text + "'");
        }
        if (accept(Token::LParen)) {
            Poly p = expr();
            if (!accept(Token::RParen)) throw ParseError(cur_.pos, "expected ')'");
            return p;
        }
        throw ParseError(cur_.pos, "expected number, variable, or '('");
    }

    Lexer lexer_;
    Token cur_{};
    const std::vector<std::string>& vars_;
    int nvars_;
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& variables) {
    return Parser(text, variables).parse();
}

std::vector<Poly> parse_poly_list(const std::string& text,
                                  const std::vector<std::string>& variables) {
    std::string body = text;
    size_t first = body.find_first_not_of(" \t");
    size_t last = body.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error("empty component list");
    body = body.substr(first, last - first + 1);
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw Error("unbalanced brackets in component list");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<Poly> out;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i <= body.size(); ++i) {
        if (i < body.size() && body[i] == '(') ++depth;
        if (i < body.size() && body[i] == ')') --depth;
        if (i == body.size() || (body[i] == ',' && depth == 0)) {
            out.push_back(parse_poly(body.substr(start, i - start), variables));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace arithdyn
