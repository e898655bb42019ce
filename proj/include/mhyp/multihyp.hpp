#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mhyp/colored.hpp"
#include "mhyp/hypersub.hpp"

namespace mhyp {

/// A color-indexed family of hypersubstitutions with finite support: a table
/// for finitely many colors plus a default entry for all other colors.
/// Every entry must belong to the declared monoid.
class MultiHypersubstitution {
 public:
  MultiHypersubstitution(const Signature& sig, MonoidSpec monoid,
                         std::map<int, Hypersubstitution> table,
                         Hypersubstitution default_entry);

  /// Maps every color to the identity hypersubstitution.
  static MultiHypersubstitution identity(const Signature& sig, MonoidSpec monoid);

  /// Maps every color to the same hypersubstitution.
  static MultiHypersubstitution constant(const Signature& sig, MonoidSpec monoid,
                                         Hypersubstitution sigma);

  /// The hypersubstitution used for `color` (the default entry when the
  /// color is outside the table).
  const Hypersubstitution& at(int color) const;

  const std::map<int, Hypersubstitution>& table() const noexcept { return table_; }
  const Hypersubstitution& default_entry() const noexcept { return default_; }
  const MonoidSpec& monoid() const noexcept { return monoid_; }

  /// The colors with an explicit table entry.
  std::set<int> support() const;

  bool operator==(const MultiHypersubstitution& other) const {
    return monoid_ == other.monoid_ && table_ == other.table_ && default_ == other.default_;
  }
  bool operator!=(const MultiHypersubstitution& other) const { return !(*this == other); }

 private:
  MonoidSpec monoid_;
  std::map<int, Hypersubstitution> table_;
  Hypersubstitution default_;
};

/// Extension of a multi-hypersubstitution to colored terms: a node with
/// symbol f and color q is rewritten by at(q)(f); the inserted skeleton is
/// colored q throughout, and the recursively rewritten children are plugged
/// into its variable positions (duplicating or dropping whole colored images
/// as the skeleton's variables dictate).
ColoredTerm apply_mhs(const MultiHypersubstitution& rho, const ColoredTerm& term);

/// Colorwise composition: (first ∘ second)(q) = first(q) ∘ second(q).  The
/// two operands must declare the same monoid; composites must stay inside it
/// (throws DomainError otherwise, naming the offending color).
MultiHypersubstitution compose_ch(const Signature& sig,
                                  const MultiHypersubstitution& first,
                                  const MultiHypersubstitution& second);

/// The image set of an identity under one multi-hypersubstitution: for every
/// pair of colorations of lhs and rhs with colors drawn from `colors`, the
/// identity between the color-forgotten rewritten sides.  `cap` bounds the
/// number of coloration pairs (throws CapError beyond it).
std::set<Identity> rho_image_of_identity(const Signature& sig,
                                         const MultiHypersubstitution& rho,
                                         const Term& lhs, const Term& rhs,
                                         const std::set<int>& colors,
                                         long cap = 1'000'000);

/// The colored-image operator over a monoid: all identities obtainable from
/// `eqs` by choosing, independently for every function position of each
/// side, a monoid element to rewrite that occurrence.  This finite
/// enumeration is exact: pairwise distinct colors realize any such choice,
/// and any (rho, colorations) pair induces one.  Requires an explicit
/// monoid; `cap` bounds the number of choice pairs per identity.
std::set<Identity> chi_mc(const Signature& sig, const MonoidSpec& m,
                          const std::set<Identity>& eqs, long cap = 1'000'000);

/// Rewrites `term` by a per-position choice of hypersubstitutions: the node
/// at function position p is rewritten by pool[choice.at(p)].  The choice
/// map must cover exactly the function positions of `term`.
Term positionwise_image(const Term& term, const std::vector<Hypersubstitution>& pool,
                        const std::map<Position, int>& choice);

/// A concrete (rho, colorations) witness realizing per-position choices for
/// the two sides of an identity.
struct RealizedAssignment {
  MultiHypersubstitution rho;
  Coloration lhs_coloration;
  Coloration rhs_coloration;
};

/// Builds a witness whose application reproduces positionwise_image on both
/// sides: distinct choices get pairwise distinct colors from `palette` (in
/// order of first appearance, left side first).  Throws DomainError if more
/// distinct pool elements are used than the palette has colors, or if a pool
/// entry is outside the monoid.
RealizedAssignment realize_assignment(const Signature& sig, const MonoidSpec& monoid,
                                      const Term& lhs,
                                      const std::map<Position, int>& lhs_choice,
                                      const Term& rhs,
                                      const std::map<Position, int>& rhs_choice,
                                      const std::vector<Hypersubstitution>& pool,
                                      const std::vector<int>& palette);

/// Renders as "{1: f -> ... | 2: ... | default: ...}".
std::string to_string(const MultiHypersubstitution& rho);

}  // namespace mhyp
