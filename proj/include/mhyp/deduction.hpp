#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mhyp/algebra.hpp"
#include "mhyp/multihyp.hpp"

namespace mhyp {

// Rules of the bounded identity calculus.  Premise fields are 0-based
// indices of earlier proof steps.

struct AxiomRule {};               ///< conclusion is one of the axioms
struct ReflRule {};                ///< t = t
struct SymRule { std::size_t premise; };
struct TransRule { std::size_t left; std::size_t right; };

/// From t = s conclude t(x<-r) = s(x<-r); requires x to occur in t.
struct SubstRule {
  std::size_t premise;
  int var;
  Term replacement;
};

/// From t' = s' and a context r with subterm t' at position p, conclude
/// r(p; s') = r.
struct ReplaceRule {
  std::size_t premise;
  Term context;
  Position at;
};

/// From t = s conclude the color-forgotten images of (t, lhs coloration) and
/// (s, rhs coloration) under rho.  Every entry of rho must belong to the
/// ambient monoid.
struct MhRule {
  std::size_t premise;
  MultiHypersubstitution rho;
  Coloration lhs_coloration;
  Coloration rhs_coloration;
};

using Rule = std::variant<AxiomRule, ReflRule, SymRule, TransRule, SubstRule,
                          ReplaceRule, MhRule>;

struct ProofStep {
  Identity conclusion;
  Rule rule;
};

/// A linear proof; the conclusion of the whole proof is the last step's.
struct Proof {
  std::vector<ProofStep> steps;
};

/// Search bounds for prove / mh_closure_bounded.
struct SearchBudget {
  int max_term_depth = 2;              ///< depth bound for instantiation terms
  std::size_t max_identity_count = 2000;
  long max_steps = 100000;             ///< rule applications attempted
  std::vector<int> color_palette = {1, 2};
};

/// Why a proof was rejected.
struct ProofRejection {
  std::size_t step;  ///< 0-based index of the offending step
  std::string reason;
};

/// Replays a proof step by step: every rule's side conditions are
/// re-validated and every conclusion recomputed.  Mh steps additionally
/// require all of rho's entries to belong to `m`.  Returns nullopt when the
/// proof is valid.
std::optional<ProofRejection> check_proof(const Signature& sig,
                                          const std::set<Identity>& axioms,
                                          const MonoidSpec& m, const Proof& proof);

enum class SearchOutcome {
  Found,
  SaturatedNotFound,   ///< no new identities derivable within this budget
  BudgetExhausted,     ///< a budget limit stopped the search
};

struct ProveResult {
  SearchOutcome outcome;
  std::optional<Proof> proof;          ///< present iff outcome == Found
  std::size_t identity_count = 0;      ///< identities derived before stopping
  long steps_used = 0;                 ///< rule applications attempted
};

/// Forward-chaining bounded search for `goal` from `axioms` over the
/// monoid `m` (which must be explicit).
ProveResult prove(const Signature& sig, const std::set<Identity>& axioms,
                  const Identity& goal, const MonoidSpec& m, const SearchBudget& budget);

struct ClosureResult {
  std::set<Identity> identities;
  bool budget_exhausted = false;
  long steps_used = 0;
};

/// All identities derivable within the budget (axioms included).
ClosureResult mh_closure_bounded(const Signature& sig, const std::set<Identity>& axioms,
                                 const MonoidSpec& m, const SearchBudget& budget);

/// Outcome of auditing a derived identity set against finite models.
struct AuditResult {
  enum class Status {
    Ok,             ///< premises hold and every derived identity is satisfied
    PremiseFailed,  ///< some algebra does not multi-hypersatisfy the axioms
    Unsound,        ///< a derived identity fails in a premise-satisfying algebra
  };
  Status status = Status::Ok;
  std::string detail;
  std::optional<std::size_t> algebra_index;
  std::optional<Identity> identity;
};

/// First verifies that every algebra multi-hypersatisfies all axioms over
/// `m` (refusing with PremiseFailed otherwise), then checks that every
/// derived identity is satisfied by every algebra.
AuditResult soundness_audit(const Signature& sig, const std::set<Identity>& axioms,
                            const std::set<Identity>& derived,
                            const std::vector<FiniteAlgebra>& algebras,
                            const MonoidSpec& m);

/// Renders a proof as numbered lines with rule tags and premise indices
/// (1-based in the rendering).
std::string to_string(const Proof& proof);

}  // namespace mhyp
