#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mhyp/colored.hpp"
#include "mhyp/multihyp.hpp"

namespace mhyp {

/// A rewrite production: the colored node (symbol, color) with children
/// ξ1..ξn rewrites to `rhs`, a colored term whose variables are exactly
/// auxiliary variables from ξ1..ξn (each standing for the corresponding
/// child, which may be duplicated or dropped).
struct Production {
  std::string symbol;
  int color = 0;
  ColoredTerm rhs;

  bool operator==(const Production& other) const {
    return symbol == other.symbol && color == other.color && rhs == other.rhs;
  }
  bool operator!=(const Production& other) const { return !(*this == other); }
};

/// A top-down colored-tree rewriter: at most one production per
/// (symbol, color) pair; variables rewrite to themselves.
class ColoredTreeTransducer {
 public:
  explicit ColoredTreeTransducer(Signature sig) : sig_(std::move(sig)) {}

  /// Validates the production (known symbol, rhs conformant, auxiliary
  /// indices within the symbol's arity, no ordinary variables in the rhs)
  /// and adds it; throws DomainError on duplicates.
  void add(Production production);

  /// The production for (symbol, color), or nullptr.
  const Production* find(const std::string& symbol, int color) const;

  const std::map<std::pair<std::string, int>, Production>& productions() const noexcept {
    return productions_;
  }

  const Signature& signature() const noexcept { return sig_; }

 private:
  Signature sig_;
  std::map<std::pair<std::string, int>, Production> productions_;
};

/// A transducer realizing a multi-hypersubstitution: one production per
/// (symbol, listed color) whose right-hand side is the corresponding image
/// colored constantly with that color, plus the origin's default entry as a
/// sentinel row for all unlisted colors.
class MhTransducer {
 public:
  const ColoredTreeTransducer& base() const noexcept { return base_; }
  const MultiHypersubstitution& origin() const noexcept { return origin_; }
  const std::set<int>& colors() const noexcept { return colors_; }

  /// The production used for (symbol, color); colors outside the listed set
  /// get the default-entry production materialized on demand.
  Production production_for(const std::string& symbol, int color) const;

  /// Number of listed productions (|colors| x |symbols|).
  std::size_t production_count() const noexcept { return base_.productions().size(); }

 private:
  friend MhTransducer from_mhs(const Signature&, const MultiHypersubstitution&,
                               const std::set<int>&);
  MhTransducer(ColoredTreeTransducer base, MultiHypersubstitution origin,
               std::set<int> colors)
      : base_(std::move(base)), origin_(std::move(origin)), colors_(std::move(colors)) {}

  ColoredTreeTransducer base_;
  MultiHypersubstitution origin_;
  std::set<int> colors_;
};

/// Builds the transducer of a multi-hypersubstitution for the listed colors
/// (the origin's table support is always included).
MhTransducer from_mhs(const Signature& sig, const MultiHypersubstitution& rho,
                      const std::set<int>& colors);

/// The production whose left side is (symbol, color) ξ-applied, rendered
/// "f^q(ξ1,ξ2) -> rhs".
std::string to_string(const Production& production, const Signature& sig);

/// One derivation step: rewrites the node at `pos` by the matching
/// production (children spliced into the auxiliary variables; nothing else
/// changes).  Throws DomainError if `pos` is not a function position or no
/// production applies.
ColoredTerm direct_derive(const ColoredTreeTransducer& t, const ColoredTerm& term,
                          const Position& pos);

/// Same, with the sentinel default row for unlisted colors.
ColoredTerm direct_derive(const MhTransducer& t, const ColoredTerm& term,
                          const Position& pos);

/// A partially rewritten term: `pending` holds the positions of input nodes
/// not yet rewritten.  Everything strictly below a pending position is still
/// original input; everything else is output.
struct DerivationState {
  ColoredTerm current;
  std::set<Position> pending;
};

/// Initial state: nothing rewritten, all function positions pending.
DerivationState start_derivation(const ColoredTerm& input);

/// Rewrites the pending node at `pos` (which must be pending) and remaps the
/// remaining pending positions through the production's auxiliary-variable
/// occurrences (duplicating or dropping pending subtree positions as the
/// right side dictates).
DerivationState derive_step(const ColoredTreeTransducer& t, const DerivationState& state,
                            const Position& pos);
DerivationState derive_step(const MhTransducer& t, const DerivationState& state,
                            const Position& pos);

/// Runs the transducer to the final state (no pending positions), rewriting
/// deepest positions first.  The result is order-independent; the canonical
/// order is just deterministic.
ColoredTerm run(const MhTransducer& t, const ColoredTerm& input);

/// Run with explicit productions only (no sentinel); throws DomainError when
/// a pending node has no production.
ColoredTerm run(const ColoredTreeTransducer& t, const ColoredTerm& input);

/// The transducer of the colorwise composition of the two origins (first
/// applied after second); color sets are united.  Throws DomainError when
/// the origins' monoids are incompatible.
MhTransducer product(const Signature& sig, const MhTransducer& first,
                     const MhTransducer& second);

/// Sampling plan for equiv_to_mhs.
struct SampleConfig {
  int exhaustive_depth = 3;
  int exhaustive_vars = 2;
  int random_count = 50;
  int random_depth = 5;
  int random_vars = 3;
  std::uint64_t seed = 20260823;
};

/// Compares run(t, ct) with the direct extension of `rho` on exhaustively
/// enumerated small colored terms and on random larger ones (colors: the
/// union of the transducer's and rho's support plus one fresh color, so the
/// sentinel/default paths are exercised).  Returns the first colored term on
/// which they disagree, or nullopt.
std::optional<ColoredTerm> equiv_to_mhs(const Signature& sig, const MhTransducer& t,
                                        const MultiHypersubstitution& rho,
                                        const SampleConfig& config = {});

}  // namespace mhyp
