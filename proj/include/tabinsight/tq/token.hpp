#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tabinsight::tq {

struct Span {
    std::size_t start = 0;  // byte offsets into the source
    std::size_t end = 0;

    friend bool operator==(const Span&, const Span&) = default;
};

enum class TokenKind {
    Ident,
    StrLit,
    IntLit,
    FloatLit,
    Op,  // == != <= >= < > & | ~ = + - * /
    LBracket,
    RBracket,
    LParen,
    RParen,
    Dot,
    Comma,
    Colon,
    LBrace,
    RBrace,
};

struct Token {
    TokenKind kind;
    std::string text;  // exact source slice, quotes included for StrLit
    Span span;
};

struct LexError : std::runtime_error {
    Span span;
    LexError(Span s, const std::string& reason) : std::runtime_error(reason), span(s) {}
};

// Maximal-munch tokenizer. Both quote styles are accepted for string
// literals; backslash escapes the next character. Unterminated strings and
// unexpected bytes raise LexError.
std::vector<Token> lex(std::string_view source);

// Unquoted payload of a StrLit token (escape sequences resolved).
std::string string_literal_value(const Token& token);

}  // namespace tabinsight::tq
