#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mhyp/colored.hpp"
#include "mhyp/multihyp.hpp"

namespace mhyp {

/// The table of one finitary operation on carrier {0..n-1}, stored row-major
/// with the first argument most significant.
struct OpTable {
  int arity = 0;
  std::vector<int> entries;

  bool operator==(const OpTable& other) const {
    return arity == other.arity && entries == other.entries;
  }
  bool operator!=(const OpTable& other) const { return !(*this == other); }
  bool operator<(const OpTable& other) const {
    if (arity != other.arity) return arity < other.arity;
    return entries < other.entries;
  }
};

/// A finite algebra for a signature: carrier {0..n-1} and one operation
/// table per symbol.
class FiniteAlgebra {
 public:
  /// Validates table shapes (arity per signature, n^arity entries, entries
  /// in range) and that exactly the signature's symbols are interpreted.
  FiniteAlgebra(const Signature& sig, int carrier_size,
                std::map<std::string, OpTable> tables);

  int carrier_size() const noexcept { return carrier_size_; }

  int apply(const std::string& symbol, const std::vector<int>& args) const;

  const std::map<std::string, OpTable>& tables() const noexcept { return tables_; }

  bool operator==(const FiniteAlgebra& other) const {
    return carrier_size_ == other.carrier_size_ && tables_ == other.tables_;
  }
  bool operator!=(const FiniteAlgebra& other) const { return !(*this == other); }
  bool operator<(const FiniteAlgebra& other) const {
    if (carrier_size_ != other.carrier_size_) return carrier_size_ < other.carrier_size_;
    return tables_ < other.tables_;
  }

 private:
  int carrier_size_;
  std::map<std::string, OpTable> tables_;
};

/// Assignment of carrier elements to variable indices.
using Valuation = std::map<int, int>;

/// Evaluates a term; throws DomainError if a variable is unassigned or a
/// symbol is uninterpreted.
int eval(const FiniteAlgebra& a, const Term& term, const Valuation& valuation);

/// A valuation separating the two sides of an identity.
struct SatisfactionFailure {
  Valuation valuation;
  int lhs_value;
  int rhs_value;
};

/// Exhaustively searches for a valuation with different side values;
/// nullopt means the identity is satisfied.  `cap` bounds the number of
/// valuations (throws CapError).
std::optional<SatisfactionFailure> find_violation(const FiniteAlgebra& a,
                                                  const Identity& id,
                                                  long cap = 10'000'000);

/// True if every valuation gives both sides the same value.
bool satisfies(const FiniteAlgebra& a, const Identity& id, long cap = 10'000'000);

/// True if the algebra satisfies every identity of the set.
bool satisfies_all(const FiniteAlgebra& a, const std::set<Identity>& ids,
                   long cap = 10'000'000);

/// The derived algebra: each symbol f is reinterpreted by the term operation
/// of sigma(f) in `a`.
FiniteAlgebra derived_algebra(const Signature& sig, const FiniteAlgebra& a,
                              const Hypersubstitution& sigma);

/// The color-indexed family of derived operation tables induced by a
/// multi-hypersubstitution: slice (q, f) interprets f by rho(q)(f), with a
/// default slice for colors outside the listed set.
class DerivedFamily {
 public:
  DerivedFamily(int carrier_size, std::map<std::pair<int, std::string>, OpTable> slices,
                std::map<std::string, OpTable> default_slice);

  int carrier_size() const noexcept { return carrier_size_; }

  /// Table for (color, symbol); colors without explicit slices fall back to
  /// the default slice.
  const OpTable& table(int color, const std::string& symbol) const;

  const std::map<std::pair<int, std::string>, OpTable>& slices() const noexcept {
    return slices_;
  }
  const std::map<std::string, OpTable>& default_slice() const noexcept {
    return default_slice_;
  }

  /// The listed slices for one color as a finite algebra.
  FiniteAlgebra slice_algebra(const Signature& sig, int color) const;

 private:
  int carrier_size_;
  std::map<std::pair<int, std::string>, OpTable> slices_;
  std::map<std::string, OpTable> default_slice_;
};

/// Builds the derived family for the listed `colors` (plus the default
/// slice from rho's default entry).
DerivedFamily derived_algebra_mh(const Signature& sig, const FiniteAlgebra& a,
                                 const MultiHypersubstitution& rho,
                                 const std::set<int>& colors);

/// Evaluates a colored term in a derived family: the node's color selects
/// the slice interpreting its symbol.
int eval_colored(const DerivedFamily& family, const ColoredTerm& term,
                 const Valuation& valuation);

/// Witness that an identity is not a multi-hyperidentity: a per-position
/// choice of monoid elements (indices into the monoid's element list) for
/// each side, the resulting image identity, and a valuation separating its
/// sides.
struct MultiHypCounterexample {
  std::map<Position, int> lhs_choice;
  std::map<Position, int> rhs_choice;
  Identity image;
  Valuation valuation;
  int lhs_value;
  int rhs_value;
};

/// Searches all per-position monoid-element choices (the exact finite
/// enumeration of the colored-image operator) for an image identity the
/// algebra violates.  Requires an explicit monoid.  `cap` bounds the number
/// of choice pairs.
std::optional<MultiHypCounterexample> find_multi_hyp_violation(
    const Signature& sig, const FiniteAlgebra& a, const Identity& id,
    const MonoidSpec& m, long cap = 1'000'000);

/// True if every image of the identity under the colored-image enumeration
/// is satisfied by `a`.
bool is_multi_hyperidentity(const Signature& sig, const FiniteAlgebra& a,
                            const Identity& id, const MonoidSpec& m,
                            long cap = 1'000'000);

/// The signature {f: 2} used by rectangular bands.
Signature rect_band_signature();

/// The rectangular band on {0..m*n-1}: element i*n+j is the pair (i,j) and
/// f((i,j),(k,l)) = (i,l).
FiniteAlgebra rect_band(int m, int n);

}  // namespace mhyp
