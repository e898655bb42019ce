#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mhyp/colored.hpp"
#include "mhyp/term.hpp"

namespace mhyp {

/// Options for the term parsers.
struct ParseOptions {
  /// Accept auxiliary variables ξ1, ξ2, ... (spelled "ξk" or "xi k" as
  /// "ξ" U+03BE followed by digits).  Used for transducer rule right-hand
  /// sides; rejected everywhere else.
  bool allow_aux_vars = false;
};

/// Parses a term: `term := var | sym | sym "(" term ("," term)* ")"` where
/// `var` is "x" followed by digits (index >= 1) and `sym` is an identifier
/// that is not a variable.  Whitespace is insignificant.  Validates symbols
/// and arities against `sig`; throws ParseError / DomainError.
Term parse_term(std::string_view text, const Signature& sig, ParseOptions opts = {});

/// Parses a colored term; every function symbol must carry "^color".
ColoredTerm parse_colored_term(std::string_view text, const Signature& sig,
                               ParseOptions opts = {});

/// Parses a position: "" or "ε" for the root, a digit string ("212") or a
/// dot-separated entry list ("1.10.2").  Entries must be within 1..max_arity
/// of `sig`; throws ParseError / DomainError.
Position parse_position(std::string_view text, const Signature& sig);

/// Parses "term = term".
Identity parse_identity(std::string_view text, const Signature& sig);

/// Parses "colored = colored".
ColoredIdentity parse_colored_identity(std::string_view text, const Signature& sig);

}  // namespace mhyp
