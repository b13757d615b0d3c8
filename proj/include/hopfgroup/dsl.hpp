#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hopfgroup/convalg.hpp"
#include "hopfgroup/schwartz.hpp"

namespace hopfgroup {

// Text grammar, whitespace insensitive:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] int)?
//   primary := int | 'z' N | '(' expr ')' | 'conj(' expr ')'
//            | 'chi(' elem ',' 'level=' int ')' | 'L[' expr ']'
// Scalars are rational numbers and roots of unity z<N>. Element literals use
// the group's own grammar. Errors carry a 1-based column.

CycScalar parse_scalar(std::string_view text);
BSFunction parse_function(std::string_view text, const GroupPtr& g);
/// Accepts `L[<function>]` expressions, or a bare function taken as its symbol.
ConvElement parse_dual(std::string_view text, const GroupPtr& g);

/// Canonical text: coarsest level, terms sorted by canonical representative.
/// The zero function prints as "0". Re-parses to an equal value.
std::string format_function(const BSFunction& f);
std::string format_dual(const ConvElement& a);

/// {"group": descriptor, "level": n, "terms": [{"rep": literal, "coeff": scalar}]}.
nlohmann::json function_to_json(const BSFunction& f);
/// `expected` (optional) must be the group named in the document.
BSFunction function_from_json(const nlohmann::json& j, const GroupPtr& expected = nullptr);
/// {"dual": true, "symbol": <function JSON>}.
nlohmann::json dual_to_json(const ConvElement& a);
ConvElement dual_from_json(const nlohmann::json& j, const GroupPtr& expected = nullptr);

}  // namespace hopfgroup
