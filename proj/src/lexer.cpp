#include "fext/lexer.hpp"

#include <cctype>

#include "fext/errors.hpp"

namespace fext {

std::vector<Token> tokenize(std::string_view src, std::size_t first_line) {
    std::vector<Token> out;
    std::size_t line = first_line;
    std::size_t col = 1;
    std::size_t i = 0;

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
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Token::Kind::Number;
            t.text = std::string(src.substr(start, j - start));
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Token::Kind::Ident;
            t.text = std::string(src.substr(start, j - start));
            advance(j - i);
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            t.kind = Token::Kind::Punct;
            t.text = "->";
            advance(2);
        } else if (std::string_view("+-*(),=&|!<.[]:@;").find(c) != std::string_view::npos) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
    std::size_t p = pos_ + ahead;
    return p < toks_.size() ? toks_[p] : toks_.back();
}

const Token& TokenStream::next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
}

bool TokenStream::accept(std::string_view s) {
    if (peek().is(s)) {
        next();
        return true;
    }
    return false;
}

const Token& TokenStream::expect(std::string_view s) {
    if (!peek().is(s)) fail("expected '" + std::string(s) + "'");
    return next();
}

std::string TokenStream::expect_ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected identifier");
    return next().text;
}

Nat TokenStream::expect_number() {
    if (peek().kind != Token::Kind::Number) fail("expected natural number");
    return Nat::parse(next().text);
}

void TokenStream::fail(const std::string& msg) const { fail_at(peek(), msg); }

void TokenStream::fail_at(const Token& t, const std::string& msg) const {
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(msg + ", found " + found, t.line, t.column);
}

}  // namespace fext
