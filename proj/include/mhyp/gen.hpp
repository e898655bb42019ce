#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mhyp/algebra.hpp"
#include "mhyp/colored.hpp"
#include "mhyp/hypersub.hpp"
#include "mhyp/multihyp.hpp"

namespace mhyp {

/// All terms over `sig` with depth <= max_depth and variables among
/// x1..num_vars.  Subtrees are shared, so the result is compact.
std::vector<Term> enumerate_terms(const Signature& sig, int max_depth, int num_vars);

/// All colored terms with depth <= max_depth, variables among x1..num_vars
/// and node colors from `colors`.
std::vector<ColoredTerm> enumerate_colored_terms(const Signature& sig, int max_depth,
                                                 int num_vars,
                                                 const std::vector<int>& colors);

/// Deterministic pseudo-random generator for terms and related structures.
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t bits() { return rng_(); }

  /// Uniform value in [0, n).
  int below(int n);

  /// Random term; leaves become variables (or constants when available).
  Term term(const Signature& sig, int max_depth, int num_vars);

  /// Random colored term with colors from `colors`.
  ColoredTerm colored_term(const Signature& sig, int max_depth, int num_vars,
                           const std::vector<int>& colors);

  /// Uniformly random position of `t`.
  Position position_in(const Term& t);

  /// Random coloration of the function positions of `t`.
  Coloration coloration_for(const Term& t, const std::vector<int>& colors);

  /// Random hypersubstitution with image depth <= max_depth.
  Hypersubstitution hypersub(const Signature& sig, int max_depth);

  /// Random hypersubstitution whose images keep the exact variable sequence
  /// x1..xn (so it lies in the sequence-preserving class by construction).
  Hypersubstitution sequence_preserving_hypersub(const Signature& sig);

  /// Random multi-hypersubstitution over `monoid` with table entries for
  /// colors 1..support_size drawn via `hypersub` (image depth bound given).
  /// All drawn entries must be members of the monoid.
  MultiHypersubstitution mhs(const Signature& sig, const MonoidSpec& monoid,
                             int support_size, int image_depth);

  /// Random finite algebra with uniformly random tables.
  FiniteAlgebra algebra(const Signature& sig, int carrier_size);

  /// Random valuation for the given variables.
  Valuation valuation(const std::set<int>& variables, int carrier_size);

 private:
  std::mt19937_64 rng_;
};

}  // namespace mhyp
