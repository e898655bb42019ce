#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mhyp/error.hpp"

namespace mhyp {

/// Variable indices used for the auxiliary transducer variables ξ1, ξ2, ...
/// start at kAuxVarBase + 1.  Ordinary term variables x1, x2, ... must stay
/// below this base so the two families never collide.
inline constexpr int kAuxVarBase = 1 << 24;

/// Returns true if `index` denotes an auxiliary variable ξk.
inline bool is_aux_var_index(int index) noexcept { return index > kAuxVarBase; }

/// A finite signature: operation symbols with fixed arities.
class Signature {
 public:
  Signature() = default;

  /// Adds a symbol.  Throws DomainError on duplicates, negative arity or an
  /// empty name.
  void add(const std::string& name, int arity);

  bool contains(const std::string& name) const;

  /// Arity of `name`; throws DomainError if the symbol is unknown.
  int arity(const std::string& name) const;

  /// Largest arity over all symbols (0 for the empty signature).
  int max_arity() const noexcept { return max_arity_; }

  const std::map<std::string, int>& symbols() const noexcept { return symbols_; }

  bool operator==(const Signature& other) const { return symbols_ == other.symbols_; }
  bool operator!=(const Signature& other) const { return !(*this == other); }

 private:
  std::map<std::string, int> symbols_;
  int max_arity_ = 0;
};

/// An immutable first-order term: either a variable x_i (i >= 1) or an
/// application f(t_1, ..., t_n).  Nullary applications are constants.
/// Cheap to copy (nodes are shared); compared structurally.
class Term {
 public:
  /// Variable x_index; index must be positive.
  static Term var(int index);

  /// Application node.  Arity discipline is not checked here; use
  /// validate(term, signature) or the parser for signature conformance.
  static Term app(std::string symbol, std::vector<Term> children = {});

  bool is_var() const noexcept;

  /// Index of a variable node; throws DomainError on application nodes.
  int var_index() const;

  /// Symbol of an application node; throws DomainError on variables.
  const std::string& symbol() const;

  /// Children of an application node; throws DomainError on variables.
  const std::vector<Term>& children() const;

  /// Number of nodes in the tree.
  int node_count() const;

  bool operator==(const Term& other) const { return compare(other) == 0; }
  bool operator!=(const Term& other) const { return compare(other) != 0; }
  bool operator<(const Term& other) const { return compare(other) < 0; }

  /// Total order: variables (by index) before applications (by symbol, then
  /// children lexicographically).  Returns <0, 0 or >0.
  int compare(const Term& other) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A position in a term: a finite sequence of positive child indices.  The
/// empty sequence is the root (rendered "ε"); position 21 is "second child,
/// then first child".
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<int> path);

  static Position root() { return Position(); }

  bool is_root() const noexcept { return path_.empty(); }
  std::size_t length() const noexcept { return path_.size(); }
  const std::vector<int>& path() const noexcept { return path_; }

  /// This position extended by one child step.
  Position child(int index) const;

  /// Concatenation: this position followed by `tail`.
  Position concat(const Position& tail) const;

  /// True if this position is a (not necessarily proper) prefix of `other`.
  bool is_prefix_of(const Position& other) const;

  /// True if neither position is a prefix of the other.
  bool parallel_to(const Position& other) const {
    return !is_prefix_of(other) && !other.is_prefix_of(*this);
  }

  bool operator==(const Position& other) const { return path_ == other.path_; }
  bool operator!=(const Position& other) const { return path_ != other.path_; }
  bool operator<(const Position& other) const { return path_ < other.path_; }

 private:
  std::vector<int> path_;
};

/// A formal identity between two terms, written "lhs = rhs".
struct Identity {
  Term lhs;
  Term rhs;

  bool operator==(const Identity& other) const {
    return lhs == other.lhs && rhs == other.rhs;
  }
  bool operator!=(const Identity& other) const { return !(*this == other); }
  bool operator<(const Identity& other) const {
    int c = lhs.compare(other.lhs);
    if (c != 0) return c < 0;
    return rhs < other.rhs;
  }
};

/// The position sets of a term: all positions, the positions of application
/// (function-symbol) nodes, and the positions of variable leaves.
struct PositionSets {
  std::set<Position> all;
  std::set<Position> f_pos;
  std::set<Position> x_pos;
};

/// Checks that every application node uses a symbol of `sig` with the right
/// number of children; throws DomainError otherwise.
void validate(const Term& term, const Signature& sig);

/// Computes all positions of `term`, split into function and variable
/// positions.
PositionSets positions(const Term& term);

/// Subterm of `term` at `pos`; throws DomainError for invalid positions.
Term subterm_at(const Term& term, const Position& pos);

/// The set of all subterms (each distinct subtree once).
std::set<Term> subterms(const Term& term);

/// Height of the term tree: variables and constants have depth 0.
int depth(const Term& term);

/// The set of variable indices occurring in `term`.
std::set<int> vars(const Term& term);

/// Simultaneous replacement of subterm occurrences: every occurrence of
/// `target_i` in `term` becomes `replacement_i`.  Replacement is one pass —
/// nothing is substituted inside the inserted replacements.  If a target does
/// not occur, the pair is inert.  Throws DomainError if one target contains
/// another (the simultaneous form would be order-dependent).
Term inductive_compose(const Term& term,
                       const std::vector<std::pair<Term, Term>>& bindings);

/// Single-pair convenience overload of inductive_compose.
Term inductive_compose(const Term& term, const Term& target, const Term& replacement);

/// Replaces the subterm at `pos` with `replacement`.  Throws DomainError for
/// invalid positions.
Term positional_compose(const Term& term, const Position& pos, const Term& replacement);

/// Replaces at several pairwise parallel positions at once; throws
/// DomainError if any two positions are comparable or any is invalid.
Term positional_compose(const Term& term,
                        const std::vector<std::pair<Position, Term>>& bindings);

/// First variable (leftmost), last variable (rightmost) and the left-to-right
/// variable occurrence sequence of a term.
struct VariableProfile {
  int leftmost;
  int rightmost;
  std::vector<int> vstr;
};

/// The left-to-right sequence of variable occurrences (empty for
/// variable-free terms).
std::vector<int> variable_sequence(const Term& term);

/// Leftmost/rightmost variable and occurrence sequence; throws DomainError if
/// the term has no variables.
VariableProfile variable_profile(const Term& term);

/// Renders a term: "f(x1,g(x2))".  Auxiliary variables render as "ξk".
std::string to_string(const Term& term);

/// Renders a position: "ε" for the root, digit string ("212") while all
/// entries are single digits, dot-separated ("1.10.2") otherwise.
std::string to_string(const Position& pos);

/// Renders an identity: "lhs = rhs".
std::string to_string(const Identity& id);

}  // namespace mhyp
