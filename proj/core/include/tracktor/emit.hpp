#pragma once

// Output formats. `emit_plain` produces DSL text that parses back to an
// equal expression (dummies are printed as fresh names d1, d2, ... / tractor
// Q1, Q2, ...); `emit_latex` is for human reading; `emit_json` is a stable
// machine-readable AST with a schemaVersion field.

#include "tracktor/expr.hpp"

namespace tracktor {

std::string emit_plain(const Expr& e);
std::string emit_latex(const Expr& e);
std::string emit_json(const Expr& e);

}  // namespace tracktor
