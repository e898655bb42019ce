#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mhyp/term.hpp"

namespace mhyp {

/// An arity-preserving assignment of a term to every operation symbol: the
/// image of an n-ary symbol uses only variables x1..xn.
class Hypersubstitution {
 public:
  /// Validates the image map against `sig`: every symbol of the signature
  /// must be mapped, images must be signature-conformant, and the image of
  /// an n-ary symbol may use only x1..xn.
  Hypersubstitution(const Signature& sig, std::map<std::string, Term> images);

  /// The identity hypersubstitution f ↦ f(x1,...,xn).
  static Hypersubstitution identity(const Signature& sig);

  /// Image of `symbol`; throws DomainError if unmapped.
  const Term& image(const std::string& symbol) const;

  const std::map<std::string, Term>& images() const noexcept { return images_; }

  bool operator==(const Hypersubstitution& other) const { return images_ == other.images_; }
  bool operator!=(const Hypersubstitution& other) const { return !(*this == other); }
  bool operator<(const Hypersubstitution& other) const { return images_ < other.images_; }

 private:
  std::map<std::string, Term> images_;
};

/// Extension of a hypersubstitution to all terms: variables are fixed and
/// f(t1,...,tn) becomes image(f) with xi replaced by the extended images of
/// the ti.
Term apply_hat(const Hypersubstitution& sigma, const Term& term);

/// Composition in the hypersubstitution monoid:
/// (first ∘ second)(f) = apply_hat(first, second(f)).
Hypersubstitution compose_h(const Signature& sig, const Hypersubstitution& first,
                            const Hypersubstitution& second);

/// Membership in the outermost/innermost-variable-preserving class: for
/// every symbol of arity n >= 1, the image's leftmost variable is x1 and its
/// rightmost variable is xn.
bool k1_member(const Signature& sig, const Hypersubstitution& sigma);

/// Membership in the variable-sequence-preserving class: for every symbol of
/// arity n, the image's variable occurrence sequence is exactly x1,...,xn.
bool k2_member(const Signature& sig, const Hypersubstitution& sigma);

/// How a monoid of hypersubstitutions is described.
enum class MonoidKind {
  Explicit,         ///< a finite, explicitly listed set
  K1,               ///< all leftmost/rightmost-preserving hypersubstitutions
  K2,               ///< all variable-sequence-preserving hypersubstitutions
  Full,             ///< every hypersubstitution
  ExplicitPlusK1,   ///< union of an explicit set with the K1 class
  ExplicitPlusK2,   ///< union of an explicit set with the K2 class
};

/// A monoid of hypersubstitutions, given either as an explicit finite set, a
/// decidable predicate class, or the union of both.  Explicit element lists
/// are deduplicated; closure is *not* enforced here (see monoid_check).
class MonoidSpec {
 public:
  static MonoidSpec explicit_set(std::vector<Hypersubstitution> elements);
  static MonoidSpec predicate(MonoidKind kind);
  static MonoidSpec explicit_plus(std::vector<Hypersubstitution> elements, MonoidKind base);

  MonoidKind kind() const noexcept { return kind_; }

  /// True only for purely explicit (finitely enumerable) specs.
  bool is_explicit() const noexcept { return kind_ == MonoidKind::Explicit; }

  /// Listed elements (empty for pure predicate kinds).
  const std::vector<Hypersubstitution>& elements() const noexcept { return elements_; }

  bool contains(const Signature& sig, const Hypersubstitution& sigma) const;

  bool operator==(const MonoidSpec& other) const {
    return kind_ == other.kind_ && elements_ == other.elements_;
  }
  bool operator!=(const MonoidSpec& other) const { return !(*this == other); }

 private:
  MonoidSpec(MonoidKind kind, std::vector<Hypersubstitution> elements);
  MonoidKind kind_;
  std::vector<Hypersubstitution> elements_;  // sorted, unique
};

/// A reason monoid_check rejected a spec.
struct MonoidViolation {
  std::string reason;
  /// For closure failures: a pair whose composite is not in the set.
  std::optional<std::pair<Hypersubstitution, Hypersubstitution>> witness;
};

/// Validates a monoid description: the identity hypersubstitution must be a
/// member, and for explicit element lists every pairwise composite must stay
/// inside the monoid.  Pure predicate kinds only get the identity check
/// (K1, K2 and Full are closed by construction).  Returns nullopt when ok.
std::optional<MonoidViolation> monoid_check(const Signature& sig, const MonoidSpec& m);

/// The hyperidentity-image operator: all identities apply_hat(σ,t) =
/// apply_hat(σ,s) for σ in the monoid and t = s in `eqs`.  Requires an
/// explicit monoid (throws DomainError otherwise).
std::set<Identity> chi_m(const Signature& sig, const MonoidSpec& m,
                         const std::set<Identity>& eqs);

/// Renders a hypersubstitution as "f -> term" lines (sorted by symbol).
std::string to_string(const Hypersubstitution& sigma);

}  // namespace mhyp
