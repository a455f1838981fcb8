#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "kha/rational_function.hpp"

namespace kha {
namespace detail {

struct Token {
    enum Kind { NUM, VAR, PLUS, MINUS, STAR, SLASH, CARET, LPAREN, RPAREN, END } kind;
    std::string text; // NUM: digits; VAR: raw variable spelling
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ >= s_.size()) return {Token::END, ""};
        char c = s_[i_];
        switch (c) {
            case '+': ++i_; return {Token::PLUS, "+"};
            case '-': ++i_; return {Token::MINUS, "-"};
            case '*': ++i_; return {Token::STAR, "*"};
            case '/': ++i_; return {Token::SLASH, "/"};
            case '^': ++i_; return {Token::CARET, "^"};
            case '(': ++i_; return {Token::LPAREN, "("};
            case ')': ++i_; return {Token::RPAREN, ")"};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            Token t{Token::NUM, s_.substr(i_, j - i_)};
            i_ = j;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            // a bracket group immediately after an identifier belongs to the name
            if (j < s_.size() && s_[j] == '[') {
                std::size_t k = j;
                int depth = 0;
                do {
                    if (s_[k] == '[') ++depth;
                    if (s_[k] == ']') --depth;
                    ++k;
                } while (k < s_.size() && depth > 0);
                if (depth != 0) throw Error(errc::malformed_input, "unbalanced bracket in variable");
                j = k;
            }
            Token t{Token::VAR, s_.substr(i_, j - i_)};
            i_ = j;
            return t;
        }
        throw Error(errc::malformed_input, std::string("unexpected character '") + c + "'");
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

inline VarId classify_var(const std::string& raw) {
    if (raw == "qh") return VarId::qh();
    auto bracket = raw.find('[');
    if (bracket != std::string::npos && raw.back() == ']') {
        std::string head = raw.substr(0, bracket);
        std::string body = raw.substr(bracket + 1, raw.size() - bracket - 2);
        if (head == "t") return VarId::t(body);
        if (head == "u" || head == "z") {
            auto comma = body.rfind(',');
            if (comma == std::string::npos)
                throw Error(errc::malformed_input, "expected 'name,slot' in " + raw);
            std::string vert = body.substr(0, comma);
            int slot = std::stoi(body.substr(comma + 1));
            return head == "u" ? VarId::u(vert, slot) : VarId::z(vert, slot);
        }
    }
    return VarId::aux(raw);
}

// Pratt-style expression parser over +, -, *, /, ^ and parentheses, evaluated
// directly into exact rational functions. Accepts every canonical rendering
// this library produces and ordinary hand-written expressions.
class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) { advance(); }

    RationalFunction parse() {
        RationalFunction r = parse_sum();
        if (cur_.kind != Token::END) throw Error(errc::malformed_input, "trailing input");
        return r;
    }

private:
    Lexer lex_;
    Token cur_;

    void advance() { cur_ = lex_.next(); }

    RationalFunction parse_sum() {
        RationalFunction acc = parse_product();
        while (cur_.kind == Token::PLUS || cur_.kind == Token::MINUS) {
            bool neg = cur_.kind == Token::MINUS;
            advance();
            RationalFunction rhs = parse_product();
            acc = neg ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    RationalFunction parse_product() {
        RationalFunction acc = parse_unary();
        while (cur_.kind == Token::STAR || cur_.kind == Token::SLASH) {
            bool div = cur_.kind == Token::SLASH;
            advance();
            RationalFunction rhs = parse_unary();
            acc = div ? acc / rhs : acc * rhs;
        }
        return acc;
    }

    RationalFunction parse_unary() {
        if (cur_.kind == Token::MINUS) {
            advance();
            return -parse_unary();
        }
        return parse_power();
    }

    RationalFunction parse_power() {
        RationalFunction base = parse_atom();
        if (cur_.kind == Token::CARET) {
            advance();
            long sign = 1;
            if (cur_.kind == Token::MINUS) {
                sign = -1;
                advance();
            }
            if (cur_.kind != Token::NUM) throw Error(errc::malformed_input, "expected exponent");
            long e = std::stol(cur_.text);
            advance();
            return base.pow(sign * e);
        }
        return base;
    }

    RationalFunction parse_atom() {
        switch (cur_.kind) {
            case Token::NUM: {
                Rat c(cur_.text);
                advance();
                return RationalFunction(c);
            }
            case Token::VAR: {
                VarId v = classify_var(cur_.text);
                advance();
                return RationalFunction::var(v);
            }
            case Token::LPAREN: {
                advance();
                RationalFunction inner = parse_sum();
                if (cur_.kind != Token::RPAREN)
                    throw Error(errc::malformed_input, "expected ')'");
                advance();
                return inner;
            }
            default:
                throw Error(errc::malformed_input, "unexpected token '" + cur_.text + "'");
        }
    }
};

} // namespace detail

inline RationalFunction parse_rational(const std::string& s) { return detail::Parser(s).parse(); }

inline LaurentPoly parse_laurent(const std::string& s) {
    RationalFunction f = parse_rational(s);
    return f.as_laurent();
}

} // namespace kha
