#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fext/nat.hpp"

namespace fext {

struct Token {
    enum class Kind { Number, Ident, Punct, End };

    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;

    bool is(std::string_view punct_or_word) const {
        return (kind == Kind::Punct || kind == Kind::Ident) && text == punct_or_word;
    }
};

/// Shared tokenizer for function, formula and scenario syntax.
/// Punctuation: + - * ( ) , = & | ! < . -> [ ] : @ ;
std::vector<Token> tokenize(std::string_view src, std::size_t first_line = 1);

/// Cursor over a token vector with error reporting at the current token.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(std::size_t ahead = 0) const;
    const Token& next();
    bool at_end() const { return peek().kind == Token::Kind::End; }
    std::size_t position() const noexcept { return pos_; }
    void rewind(std::size_t pos) noexcept { pos_ = pos; }
    bool accept(std::string_view s);
    const Token& expect(std::string_view s);
    std::string expect_ident();
    Nat expect_number();

    [[noreturn]] void fail(const std::string& msg) const;
    [[noreturn]] void fail_at(const Token& t, const std::string& msg) const;

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace fext
