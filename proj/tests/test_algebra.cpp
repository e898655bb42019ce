#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "mhyp/algebra.hpp"
#include "mhyp/gen.hpp"
#include "mhyp/parse.hpp"

using namespace mhyp;

namespace {

Signature binary_sig() {
  Signature sig;
  sig.add("f", 2);
  return sig;
}

Hypersubstitution make(const Signature& sig, const std::string& f_image) {
  return Hypersubstitution(sig, {{"f", parse_term(f_image, sig)}});
}

}  // namespace

TEST_CASE("finite algebra construction is validated") {
  const Signature sig = binary_sig();
  const OpTable good{2, {0, 1, 0, 1}};
  CHECK_NOTHROW(FiniteAlgebra(sig, 2, {{"f", good}}));

  CHECK_THROWS_AS(FiniteAlgebra(sig, 0, {{"f", good}}), DomainError);
  CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {}), DomainError);                       // missing table
  CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{"f", OpTable{1, {0, 1}}}}), DomainError);  // wrong arity
  CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{"f", OpTable{2, {0, 1, 0}}}}), DomainError);  // wrong size
  CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{"f", OpTable{2, {0, 1, 0, 2}}}}), DomainError);  // out of range
  CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{"f", OpTable{2, {0, 1, 0, -1}}}}), DomainError);
  CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{"f", good}, {"g", OpTable{0, {0}}}}),
                  DomainError);  // unknown symbol

  const FiniteAlgebra a(sig, 2, {{"f", good}});
  CHECK(a.carrier_size() == 2);
  CHECK(a.apply("f", {1, 0}) == 0);
  CHECK(a.apply("f", {1, 1}) == 1);
  CHECK_THROWS_AS(a.apply("g", {0}), DomainError);
  CHECK_THROWS_AS(a.apply("f", {0}), DomainError);
  CHECK_THROWS_AS(a.apply("f", {0, 2}), DomainError);
}

TEST_CASE("rectangular bands") {
  const FiniteAlgebra rb = rect_band(2, 2);
  CHECK(rb.carrier_size() == 4);
  CHECK(rb.tables().at("f").entries ==
        std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1, 2, 3, 2, 3, 2, 3, 2, 3});
  // Element i*n+j is the pair (i,j); f picks the row of the first argument
  // and the column of the second.
  CHECK(rb.apply("f", {2, 1}) == 3);
  CHECK(rb.apply("f", {1, 2}) == 0);

  const FiniteAlgebra wide = rect_band(2, 3);
  CHECK(wide.carrier_size() == 6);
  CHECK(wide.apply("f", {4, 2}) == 5);  // (1,1) . (0,2) = (1,2)
  CHECK(wide.apply("f", {0, 5}) == 2);  // (0,0) . (1,2) = (0,2)

  CHECK(rect_band(1, 1).carrier_size() == 1);
  CHECK_THROWS_AS(rect_band(0, 2), DomainError);
  CHECK_THROWS_AS(rect_band(2, -1), DomainError);

  const Signature sig = rect_band_signature();
  CHECK(sig.arity("f") == 2);
}

TEST_CASE("term evaluation") {
  const Signature sig = binary_sig();
  const FiniteAlgebra rb = rect_band(2, 2);

  CHECK(eval(rb, Term::var(3), {{3, 2}}) == 2);
  CHECK(eval(rb, parse_term("f(x1,f(x2,x1))", sig), {{1, 2}, {2, 1}}) == 2);
  CHECK_THROWS_AS(eval(rb, parse_term("f(x1,x2)", sig), {{1, 0}}), DomainError);
}

TEST_CASE("violation search") {
  const Signature sig = binary_sig();
  const FiniteAlgebra rb = rect_band(2, 2);
  const Identity comm = parse_identity("f(x1,x2) = f(x2,x1)", sig);

  // Valuations are scanned with the variables in ascending order and the
  // last variable changing fastest, so the first failure is x1=0, x2=1.
  const auto failure = find_violation(rb, comm);
  REQUIRE(failure.has_value());
  CHECK(failure->valuation == Valuation{{1, 0}, {2, 1}});
  CHECK(failure->lhs_value == 1);
  CHECK(failure->rhs_value == 0);
  CHECK(!satisfies(rb, comm));

  CHECK(!find_violation(rb, parse_identity("f(x1,x1) = x1", sig)).has_value());
  CHECK(satisfies(rb, parse_identity("f(f(x1,x2),x3) = f(x1,x3)", sig)));

  const std::set<Identity> band_axioms{
      parse_identity("f(x1,f(x2,x3)) = f(f(x1,x2),x3)", sig),
      parse_identity("f(f(x1,x2),x3) = f(x1,x3)", sig),
      parse_identity("f(x1,x1) = x1", sig)};
  CHECK(satisfies_all(rb, band_axioms));
  CHECK(satisfies(rb, parse_identity("f(f(x1,x2),f(x1,x2)) = f(f(x1,x2),x2)", sig)));
  CHECK(!satisfies_all(rb, {comm, parse_identity("f(x1,x1) = x1", sig)}));

  // The valuation count is checked against the cap before scanning.
  CHECK_THROWS_AS(find_violation(rb, comm, 15), CapError);
  CHECK_NOTHROW(find_violation(rb, comm, 16));

  // A variable-free-side identity still evaluates (no valuations needed).
  Signature with_const;
  with_const.add("c", 0);
  const FiniteAlgebra one(with_const, 1, {{"c", OpTable{0, {0}}}});
  CHECK(satisfies(one, parse_identity("c = c", with_const)));
}

TEST_CASE("derived algebras") {
  const Signature sig = binary_sig();
  const FiniteAlgebra rb = rect_band(2, 2);
  const Hypersubstitution id = Hypersubstitution::identity(sig);
  const Hypersubstitution swap = make(sig, "f(x2,x1)");

  CHECK(derived_algebra(sig, rb, id) == rb);
  const FiniteAlgebra swapped = derived_algebra(sig, rb, swap);
  CHECK(swapped.tables().at("f").entries ==
        std::vector<int>{0, 0, 2, 2, 1, 1, 3, 3, 0, 0, 2, 2, 1, 1, 3, 3});

  // The derived algebra of a projection image is the projection operation.
  const FiniteAlgebra left = derived_algebra(sig, rb, make(sig, "x1"));
  CHECK(left.apply("f", {3, 0}) == 3);

  // eval in the derived algebra = eval of the rewritten term in the original.
  const Signature rich = [] {
    Signature s;
    s.add("f", 2);
    s.add("g", 1);
    return s;
  }();
  TermGen gen(31);
  for (int i = 0; i < 50; ++i) {
    const FiniteAlgebra a = gen.algebra(rich, 3);
    const Hypersubstitution sigma = gen.hypersub(rich, 2);
    const Term t = gen.term(rich, 3, 3);
    const Valuation v = gen.valuation({1, 2, 3}, 3);
    CHECK(eval(derived_algebra(rich, a, sigma), t, v) == eval(a, apply_hat(sigma, t), v));
  }
  // Deriving twice composes the hypersubstitutions.
  for (int i = 0; i < 30; ++i) {
    const FiniteAlgebra a = gen.algebra(rich, 3);
    const Hypersubstitution s1 = gen.hypersub(rich, 2);
    const Hypersubstitution s2 = gen.hypersub(rich, 2);
    CHECK(derived_algebra(rich, derived_algebra(rich, a, s1), s2) ==
          derived_algebra(rich, a, compose_h(rich, s1, s2)));
  }
}

TEST_CASE("derived families and colored evaluation") {
  const Signature sig = binary_sig();
  const FiniteAlgebra rb = rect_band(2, 2);
  const Hypersubstitution id = Hypersubstitution::identity(sig);
  const Hypersubstitution swap = make(sig, "f(x2,x1)");
  const Hypersubstitution nest = make(sig, "f(f(x2,x1),x2)");
  const MultiHypersubstitution rho(sig, MonoidSpec::predicate(MonoidKind::Full),
                                   {{1, swap}, {2, nest}, {3, id}}, id);

  const DerivedFamily family = derived_algebra_mh(sig, rb, rho, {1, 2, 3});
  CHECK(family.carrier_size() == 4);
  CHECK(family.slice_algebra(sig, 1) == derived_algebra(sig, rb, swap));
  CHECK(family.slice_algebra(sig, 2) == derived_algebra(sig, rb, nest));
  CHECK(family.slice_algebra(sig, 3) == rb);
  CHECK(family.table(99, "f") == rb.tables().at("f"));  // default slice
  CHECK(family.table(1, "f").entries ==
        std::vector<int>{0, 0, 2, 2, 1, 1, 3, 3, 0, 0, 2, 2, 1, 1, 3, 3});

  const ColoredTerm a = parse_colored_term("f^1(f^1(x1,x2),f^2(x1,x2))", sig);
  CHECK(eval_colored(family, a, {{1, 1}, {2, 2}}) == 3);
  CHECK(eval_colored(family, ColoredTerm::var(2), {{2, 3}}) == 3);

  // Colored evaluation agrees with rewriting first and evaluating after.
  CHECK(eval_colored(family, a, {{1, 1}, {2, 2}}) ==
        eval(rb, apply_mhs(rho, a).term(), {{1, 1}, {2, 2}}));
  TermGen gen(37);
  for (int i = 0; i < 50; ++i) {
    const FiniteAlgebra alg = gen.algebra(sig, 3);
    const MultiHypersubstitution r = gen.mhs(sig, MonoidSpec::predicate(MonoidKind::Full), 2, 2);
    const DerivedFamily fam = derived_algebra_mh(sig, alg, r, {1, 2});
    const ColoredTerm ct = gen.colored_term(sig, 3, 2, {1, 2, 5});
    const Valuation v = gen.valuation({1, 2}, 3);
    CHECK(eval_colored(fam, ct, v) == eval(alg, apply_mhs(r, ct).term(), v));
  }
}

TEST_CASE("multi-hyperidentity checking") {
  const Signature sig = binary_sig();
  const FiniteAlgebra rb = rect_band(2, 2);
  const Hypersubstitution id = Hypersubstitution::identity(sig);
  const Hypersubstitution swap = make(sig, "f(x2,x1)");
  const Hypersubstitution nest = make(sig, "f(f(x2,x1),x2)");
  const MonoidSpec m123 = MonoidSpec::explicit_set({id, swap, nest});

  // The band satisfies this identity plainly but not all its colored images.
  const Identity base =
      parse_identity("f(f(x1,x2),f(x1,x2)) = f(f(x1,x2),x2)", sig);
  CHECK(satisfies(rb, base));
  const auto witness = find_multi_hyp_violation(sig, rb, base, m123);
  REQUIRE(witness.has_value());
  CHECK(!satisfies(rb, witness->image));
  CHECK(!is_multi_hyperidentity(sig, rb, base, m123));

  // The witness is internally consistent: the recorded choices rebuild the
  // image, and the recorded valuation separates its sides.
  const std::vector<Hypersubstitution>& pool = m123.elements();
  CHECK(positionwise_image(base.lhs, pool, witness->lhs_choice) == witness->image.lhs);
  CHECK(positionwise_image(base.rhs, pool, witness->rhs_choice) == witness->image.rhs);
  CHECK(eval(rb, witness->image.lhs, witness->valuation) == witness->lhs_value);
  CHECK(eval(rb, witness->image.rhs, witness->valuation) == witness->rhs_value);
  CHECK(witness->lhs_value != witness->rhs_value);

  // Over the trivial monoid the check degenerates to plain satisfaction.
  const MonoidSpec trivial = MonoidSpec::explicit_set({id});
  const Identity comm = parse_identity("f(x1,x2) = f(x2,x1)", sig);
  const auto plain = find_multi_hyp_violation(sig, rb, comm, trivial);
  REQUIRE(plain.has_value());
  CHECK(plain->image == comm);
  CHECK(is_multi_hyperidentity(sig, rb, parse_identity("f(x1,x1) = x1", sig), trivial));

  // A commutative semilattice keeps commutativity under the swap monoid.
  const FiniteAlgebra meet(sig, 2, {{"f", OpTable{2, {0, 0, 0, 1}}}});
  CHECK(is_multi_hyperidentity(sig, meet, comm, MonoidSpec::explicit_set({id, swap})));

  CHECK_THROWS_AS(
      find_multi_hyp_violation(sig, rb, comm, MonoidSpec::predicate(MonoidKind::Full)),
      DomainError);
  CHECK_THROWS_AS(
      find_multi_hyp_violation(sig, rb, comm, MonoidSpec::explicit_set({id, swap}), 3),
      CapError);
  CHECK_NOTHROW(
      find_multi_hyp_violation(sig, rb, comm, MonoidSpec::explicit_set({id, swap}), 4));
}
