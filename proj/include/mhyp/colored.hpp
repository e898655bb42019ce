#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mhyp/term.hpp"

namespace mhyp {

/// A coloration: a finite map from positions to colors (natural numbers).
/// For a colored term the domain is exactly the set of function positions.
class Coloration {
 public:
  Coloration() = default;
  explicit Coloration(std::map<Position, int> assignment);

  /// Color at `pos`; throws DomainError if unassigned.
  int at(const Position& pos) const;

  bool assigns(const Position& pos) const { return assignment_.count(pos) != 0; }
  std::size_t size() const noexcept { return assignment_.size(); }
  const std::map<Position, int>& assignment() const noexcept { return assignment_; }

  /// The coloration q ↦ at(pos . q), defined on the suffixes of entries that
  /// extend `pos` (used when passing to the subterm at `pos`).
  Coloration restricted_to(const Position& pos) const;

  bool operator==(const Coloration& other) const {
    return assignment_ == other.assignment_;
  }
  bool operator!=(const Coloration& other) const { return !(*this == other); }

 private:
  std::map<Position, int> assignment_;
};

/// A term whose function-symbol occurrences each carry a color.  Stored as an
/// annotated tree; the (term, coloration) view is available via term() and
/// coloration().  Variables carry no color.
class ColoredTerm {
 public:
  /// Variable leaf x_index.
  static ColoredTerm var(int index);

  /// Application node with a color.  Colors must be nonnegative.
  static ColoredTerm app(std::string symbol, int color,
                         std::vector<ColoredTerm> children = {});

  /// Pairs a term with a coloration; the coloration domain must be exactly
  /// the set of function positions of `term` (throws DomainError otherwise).
  static ColoredTerm attach(const Term& term, const Coloration& coloration);

  /// Colors every function position of `term` with the same color.
  static ColoredTerm attach_constant(const Term& term, int color);

  bool is_var() const noexcept;
  int var_index() const;
  const std::string& symbol() const;
  int color() const;  ///< Root color; throws DomainError on variables.
  const std::vector<ColoredTerm>& children() const;

  /// The underlying term with colors forgotten.
  Term term() const;

  /// The coloration as a position map (domain = function positions).
  Coloration coloration() const;

  int node_count() const;

  bool operator==(const ColoredTerm& other) const { return compare(other) == 0; }
  bool operator!=(const ColoredTerm& other) const { return compare(other) != 0; }
  bool operator<(const ColoredTerm& other) const { return compare(other) < 0; }

  int compare(const ColoredTerm& other) const;

 private:
  struct Node;
  explicit ColoredTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A formal identity between colored terms.
struct ColoredIdentity {
  ColoredTerm lhs;
  ColoredTerm rhs;

  bool operator==(const ColoredIdentity& other) const {
    return lhs == other.lhs && rhs == other.rhs;
  }
  bool operator!=(const ColoredIdentity& other) const { return !(*this == other); }
  bool operator<(const ColoredIdentity& other) const {
    int c = lhs.compare(other.lhs);
    if (c != 0) return c < 0;
    return rhs < other.rhs;
  }
};

/// Checks symbol arities against `sig`; throws DomainError on mismatch.
void validate(const ColoredTerm& term, const Signature& sig);

/// Positions of the underlying term.
PositionSets positions(const ColoredTerm& term);

/// The colored subterm at `pos` (the subtree together with the restricted
/// coloration).  Throws DomainError for invalid positions.
ColoredTerm restrict_to(const ColoredTerm& term, const Position& pos);

/// The set of colored subterms: restrictions at all positions.
std::set<ColoredTerm> colored_subterms(const ColoredTerm& term);

/// Simultaneous replacement of colored-subterm occurrences; occurrence
/// equality includes colors.  Same precondition as the uncolored form: no
/// target may contain another.
ColoredTerm inductive_compose(const ColoredTerm& term,
                              const std::vector<std::pair<ColoredTerm, ColoredTerm>>& bindings);

/// Single-pair convenience overload.
ColoredTerm inductive_compose(const ColoredTerm& term, const ColoredTerm& target,
                              const ColoredTerm& replacement);

/// Replaces the colored subterm at `pos`; the replacement keeps its own
/// colors, all other positions keep the colors of `term`.
ColoredTerm positional_compose(const ColoredTerm& term, const Position& pos,
                               const ColoredTerm& replacement);

/// Replacement at several pairwise parallel positions at once.
ColoredTerm positional_compose(const ColoredTerm& term,
                               const std::vector<std::pair<Position, ColoredTerm>>& bindings);

/// Renders a colored term: "f^1(x1,g^2(x2))"; nullary symbols render as
/// "c^1".  Every function node carries its ^color suffix.
std::string to_string(const ColoredTerm& term);

/// Renders a coloration as "{ε:1, 2:3}" with positions in sorted order.
std::string to_string(const Coloration& coloration);

std::string to_string(const ColoredIdentity& id);

}  // namespace mhyp
