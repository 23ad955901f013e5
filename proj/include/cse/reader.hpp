#pragma once

#include "cse/expr.hpp"
#include "cse/source_span.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cse {

enum class token_kind { lparen, rparen, quote, number, string, boolean, symbol };

const char* to_string(token_kind kind);

struct Token {
    token_kind kind;
    std::string text;
    SourceSpan span;
};

/// Splits source text into tokens. `;` starts a comment running to the end of
/// the line. A lone `.` is returned as a symbol token and is only accepted by
/// the parser in dotted-pair position.
///
/// Throws parse_error on an unterminated string, a bad escape, a malformed
/// number such as `1.2.3`, or an unknown `#` syntax.
std::vector<Token> tokenize(std::string_view source);

/// Reads a whole program and desugars it to core expressions: procedure-style
/// `define` becomes a lambda definition and quoted data becomes `list`/`cons`
/// applications.
std::vector<ExprPtr> parse_program(std::string_view source);

/// Reader-level datum, before syntax analysis.
struct Datum {
    enum class kind { atom, list };

    kind type = kind::atom;
    Token atom{};
    std::vector<Datum> items;
    /// Present for dotted lists `(a b . c)`.
    std::vector<Datum> tail;
    SourceSpan span;
};

/// Turns the datum following a quote into an expression.
ExprPtr desugar_quote(const Datum& datum, SourceSpan quote_span);

}  // namespace cse
