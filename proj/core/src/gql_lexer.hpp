#pragma once

#include "restql/errors.hpp"

#include <string>
#include <vector>

namespace restql::detail {

enum class TokenKind { Name, IntValue, FloatValue, StringValue, Punct, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    int line = 1;
    int column = 1;

    bool is_punct(const char* p) const { return kind == TokenKind::Punct && text == p; }
    bool is_name(const char* n) const { return kind == TokenKind::Name && text == n; }
};

/// GraphQL lexical analysis shared by the SDL and query parsers: names,
/// int/float/string literals, punctuators (including the "..." spread),
/// comments and insignificant commas skipped. String tokens carry the
/// decoded value. Throws SyntaxError on malformed input.
std::vector<Token> lex_graphql(const std::string& text);

} // namespace restql::detail
