#pragma once

// The expression DSL: a small text grammar for atoms with bracketed index
// lists, variance sign prefixes, derivative/macro application, rational
// coefficients in n, and section declarations. See docs/dsl-grammar.ebnf.

#include "tracktor/expr.hpp"

namespace tracktor {

struct ParseError : std::runtime_error {
    size_t line, col;
    ParseError(const std::string& msg, size_t line_, size_t col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" +
                             std::to_string(col_)),
          line(line_),
          col(col_) {}
};

// Parse a document: optional `section` declarations followed by one
// expression. Index kind is inferred from the label's first character
// (uppercase = tractor); a label used twice (once up, once down) is a
// contraction.
Expr parse(const std::string& text);

// Parse just a coefficient (rational function of n).
DimRational parse_coefficient(const std::string& text);

}  // namespace tracktor
