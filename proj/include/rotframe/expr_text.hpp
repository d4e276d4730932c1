#pragma once

#include <string>

#include "rotframe/rotation.hpp"

namespace rotframe {

// Text form of rotation expressions, shared by the CLI and by the canonical
// sum ordering inside evaluation.
//
//   Expr   := Term ('+' Term)*
//   Term   := Factor ('*' Factor)*
//   Factor := axis '(' signed-real ')' | '(' Expr ')'
//   axis   := 'x' | 'y' | 'z' | 'u' '(' real ',' real ',' real ')'
//
// The signed real is the frequency; its sign is the rotation sense.
// Whitespace is insignificant.  '*' binds tighter than '+'.

/// Parses the mini-language.  Throws ExprParseError (with byte offset and the
/// expected-token set) on syntax errors, non-unit u-axes, or empty input.
RotationExpr parse_expr(const std::string& src);

/// Canonical text form; parse(serialize(parse(s))) == parse(s).
std::string to_text(const RotationExpr& expr);

/// Formats a double with 17 significant digits (lossless round-trip).
std::string format_real(double v);

}  // namespace rotframe
