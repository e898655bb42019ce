#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mhyp/algebra.hpp"
#include "mhyp/colored.hpp"
#include "mhyp/deduction.hpp"
#include "mhyp/hypersub.hpp"
#include "mhyp/multihyp.hpp"
#include "mhyp/term.hpp"
#include "mhyp/transducer.hpp"

namespace mhyp {

// All file formats share the same conventions: '#' starts a comment running
// to end of line; blank lines are ignored; whitespace is insignificant
// inside terms.

/// Signature file: one "name arity" pair per line.
Signature load_signature(const std::filesystem::path& file);

/// Term file: the whole (comment-stripped) text is one term.
Term load_term(const std::filesystem::path& file, const Signature& sig);

/// Colored-term file: one colored term.
ColoredTerm load_colored_term(const std::filesystem::path& file, const Signature& sig);

/// True if the file's comment-stripped text contains a color marker '^'
/// (used to decide between the colored and uncolored readers).
bool file_mentions_colors(const std::filesystem::path& file);

/// Hypersubstitution file: one "symbol -> term" line per symbol.
Hypersubstitution load_hypersubstitution(const std::filesystem::path& file,
                                         const Signature& sig);

/// Monoid file: a "monoid KIND" header (explicit, k1, k2, full, explicit+k1,
/// explicit+k2), then for explicit kinds named blocks
///     sigma NAME
///     symbol -> term
///     ...
Hypersubstitution parse_hypersub_lines(const std::vector<std::string>& lines,
                                       const Signature& sig);
MonoidSpec load_monoid(const std::filesystem::path& file, const Signature& sig);

/// Multi-hypersubstitution file: a "monoid KIND" or "monoid file PATH" line
/// (paths are resolved relative to the file), then entry lines
///     COLOR: symbol -> term
///     default: symbol -> term
/// Every symbol needs a default image; a color's missing symbols inherit
/// the default image.
MultiHypersubstitution load_rho(const std::filesystem::path& file, const Signature& sig);

/// Algebra file: "carrier N", then per symbol a block "name: e0 e1 ..."
/// (row-major, first argument most significant; entries may continue on
/// following lines).
FiniteAlgebra load_algebra(const std::filesystem::path& file, const Signature& sig);

/// Equation file: one "term = term" line per identity.
std::vector<Identity> load_identities(const std::filesystem::path& file,
                                      const Signature& sig);

/// Production file: lines "symbol^color(ξ1,...,ξn) -> rhs" (the argument
/// list is omitted for nullary symbols).
ColoredTreeTransducer load_productions(const std::filesystem::path& file,
                                       const Signature& sig);

/// Parses a budget description "depth=D,ids=I,steps=S,colors=C" (any subset
/// of the keys; colors=C means the palette {1..C}).
SearchBudget parse_budget(const std::string& text);

}  // namespace mhyp
