#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "mhyp/gen.hpp"
#include "mhyp/parse.hpp"
#include "mhyp/transducer.hpp"

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

MultiHypersubstitution example_family(const Signature& sig) {
  const Hypersubstitution id = Hypersubstitution::identity(sig);
  return MultiHypersubstitution(sig, MonoidSpec::predicate(MonoidKind::Full),
                                {{1, make(sig, "f(x2,x1)")},
                                 {2, make(sig, "f(f(x2,x1),x2)")},
                                 {3, id}},
                                id);
}

std::string xi(int k) { return std::string("\xce\xbe") + std::to_string(k); }

ColoredTerm rhs(const std::string& text, const Signature& sig) {
  ParseOptions opts;
  opts.allow_aux_vars = true;
  return parse_colored_term(text, sig, opts);
}

}  // namespace

TEST_CASE("production validation") {
  Signature sig;
  sig.add("f", 2);
  sig.add("g", 1);
  sig.add("c", 0);

  ColoredTreeTransducer t(sig);
  t.add(Production{"f", 1, rhs("f^1(" + xi(2) + "," + xi(1) + ")", sig)});
  t.add(Production{"g", 1, rhs(xi(1), sig)});        // bare child pass-through
  t.add(Production{"c", 2, rhs("c^2", sig)});        // constants take no auxiliaries
  REQUIRE(t.find("f", 1) != nullptr);
  CHECK(t.find("f", 1)->rhs == rhs("f^1(" + xi(2) + "," + xi(1) + ")", sig));
  CHECK(t.find("f", 2) == nullptr);

  // One production per (symbol, color).
  CHECK_THROWS_AS(t.add(Production{"f", 1, rhs("f^1(" + xi(1) + "," + xi(2) + ")", sig)}),
                  DomainError);
  // The symbol must exist.
  CHECK_THROWS_AS(t.add(Production{"h", 1, rhs(xi(1), sig)}), DomainError);
  // Ordinary variables cannot appear on the right side.
  CHECK_THROWS_AS(t.add(Production{"f", 3, rhs("f^1(x1," + xi(2) + ")", sig)}),
                  DomainError);
  // Auxiliary indices are bounded by the symbol's arity.
  CHECK_THROWS_AS(t.add(Production{"g", 2, rhs(xi(2), sig)}), DomainError);
  CHECK_THROWS_AS(t.add(Production{"c", 3, rhs(xi(1), sig)}), DomainError);
}

TEST_CASE("production rendering") {
  const Signature sig = binary_sig();
  const Production p{"f", 1, rhs("f^1(" + xi(2) + "," + xi(1) + ")", sig)};
  CHECK(to_string(p, sig) ==
        "f^1(" + xi(1) + "," + xi(2) + ") -> f^1(" + xi(2) + "," + xi(1) + ")");
}

TEST_CASE("building the transducer of a family") {
  const Signature sig = binary_sig();
  const MultiHypersubstitution rho = example_family(sig);

  const MhTransducer t = from_mhs(sig, rho, {1, 2, 3});
  CHECK(t.colors() == std::set<int>{1, 2, 3});
  CHECK(t.production_count() == 3);
  CHECK(t.production_for("f", 1).rhs == rhs("f^1(" + xi(2) + "," + xi(1) + ")", sig));
  CHECK(t.production_for("f", 2).rhs ==
        rhs("f^2(f^2(" + xi(2) + "," + xi(1) + ")," + xi(2) + ")", sig));
  CHECK(t.production_for("f", 3).rhs == rhs("f^3(" + xi(1) + "," + xi(2) + ")", sig));

  // Unlisted colors materialize the default entry on demand.
  const Production sentinel = t.production_for("f", 99);
  CHECK(sentinel.color == 99);
  CHECK(sentinel.rhs == rhs("f^99(" + xi(1) + "," + xi(2) + ")", sig));

  // The table support is always covered, even when no colors are requested.
  CHECK(from_mhs(sig, rho, {}).colors() == std::set<int>{1, 2, 3});
  CHECK(from_mhs(sig, rho, {7}).colors() == std::set<int>{1, 2, 3, 7});
}

TEST_CASE("single derivation steps") {
  const Signature sig = binary_sig();
  const MhTransducer t = from_mhs(sig, example_family(sig), {1, 2, 3});
  const ColoredTerm a = parse_colored_term("f^1(f^1(x1,x2),f^2(x1,x2))", sig);

  // Rewriting the root splices the untouched children into the swapped slots.
  CHECK(to_string(direct_derive(t, a, Position::root())) ==
        "f^1(f^2(x1,x2),f^1(x1,x2))");
  CHECK(to_string(direct_derive(t, a, Position({2}))) ==
        "f^1(f^1(x1,x2),f^2(f^2(x2,x1),x2))");

  // Only function positions can be rewritten.
  CHECK_THROWS_AS(direct_derive(t, a, Position({1, 1})), DomainError);
  CHECK_THROWS_AS(direct_derive(t, a, Position({3})), DomainError);

  // Without the sentinel, a missing production is an error.
  const ColoredTerm stray = parse_colored_term("f^9(x1,x2)", sig);
  CHECK_THROWS_AS(direct_derive(t.base(), stray, Position::root()), DomainError);
  CHECK(to_string(direct_derive(t, stray, Position::root())) == "f^9(x1,x2)");
}

TEST_CASE("derivation states track pending input nodes") {
  const Signature sig = binary_sig();
  const MhTransducer t = from_mhs(sig, example_family(sig), {1, 2, 3});
  const ColoredTerm a = parse_colored_term("f^1(f^1(x1,x2),f^2(x1,x2))", sig);

  DerivationState state = start_derivation(a);
  CHECK(state.pending ==
        std::set<Position>{Position::root(), Position({1}), Position({2})});

  // The swap production sends the pending child 1 to slot 2 and child 2 to
  // slot 1.
  state = derive_step(t, state, Position::root());
  CHECK(to_string(state.current) == "f^1(f^2(x1,x2),f^1(x1,x2))");
  CHECK(state.pending == std::set<Position>{Position({1}), Position({2})});

  state = derive_step(t, state, Position({1}));
  CHECK(to_string(state.current) == "f^1(f^2(f^2(x2,x1),x2),f^1(x1,x2))");
  CHECK(state.pending == std::set<Position>{Position({2})});

  state = derive_step(t, state, Position({2}));
  CHECK(state.pending.empty());
  // This shallow-first order ends at the same place as the canonical run.
  CHECK(state.current == run(t, a));
  CHECK(to_string(state.current) == "f^1(f^2(f^2(x2,x1),x2),f^1(x2,x1))");

  CHECK_THROWS_AS(derive_step(t, state, Position::root()), DomainError);
}

TEST_CASE("duplicating and deleting productions remap pending positions") {
  Signature sig = binary_sig();
  ColoredTreeTransducer copy_both(sig);
  copy_both.add(Production{"f", 1, rhs("f^1(" + xi(1) + "," + xi(1) + ")", sig)});
  const ColoredTerm input = parse_colored_term("f^1(f^1(x1,x2),x3)", sig);

  DerivationState state = start_derivation(input);
  CHECK(state.pending == std::set<Position>{Position::root(), Position({1})});
  state = derive_step(copy_both, state, Position::root());
  CHECK(to_string(state.current) == "f^1(f^1(x1,x2),f^1(x1,x2))");
  // The pending subtree was duplicated, so it is now pending twice.
  CHECK(state.pending == std::set<Position>{Position({1}), Position({2})});
  state = derive_step(copy_both, state, Position({1}));
  state = derive_step(copy_both, state, Position({2}));
  CHECK(state.pending.empty());
  CHECK(to_string(state.current) == "f^1(f^1(x1,x1),f^1(x1,x1))");

  ColoredTreeTransducer drop_first(sig);
  drop_first.add(Production{"f", 1, rhs(xi(2), sig)});
  DerivationState erased = start_derivation(input);
  erased = derive_step(drop_first, erased, Position::root());
  CHECK(erased.current == ColoredTerm::var(3));
  CHECK(erased.pending.empty());  // the pending child was deleted with its slot
}

TEST_CASE("running the transducer realizes the family") {
  const Signature sig = binary_sig();
  const MultiHypersubstitution rho = example_family(sig);
  const MhTransducer t = from_mhs(sig, rho, {1, 2, 3});

  const ColoredTerm a = parse_colored_term("f^1(f^1(x1,x2),f^2(x1,x2))", sig);
  const ColoredTerm b = parse_colored_term("f^3(f^2(x1,x2),x2)", sig);
  CHECK(run(t, a) == apply_mhs(rho, a));
  CHECK(to_string(run(t, a)) == "f^1(f^2(f^2(x2,x1),x2),f^1(x2,x1))");
  CHECK(run(t, b) == apply_mhs(rho, b));
  CHECK(run(t, ColoredTerm::var(5)) == ColoredTerm::var(5));

  // Unlisted colors run through the default row.
  const ColoredTerm stray = parse_colored_term("f^7(f^1(x1,x2),x1)", sig);
  CHECK(run(t, stray) == apply_mhs(rho, stray));
  CHECK_THROWS_AS(run(t.base(), stray), DomainError);

  SampleConfig small;
  small.exhaustive_depth = 2;
  CHECK(!equiv_to_mhs(sig, t, rho, small).has_value());

  // A different family is detected, and the reported term really separates
  // the two.
  const MultiHypersubstitution swapped = MultiHypersubstitution::constant(
      sig, MonoidSpec::predicate(MonoidKind::Full), make(sig, "f(x2,x1)"));
  const auto separating = equiv_to_mhs(sig, t, swapped, small);
  REQUIRE(separating.has_value());
  CHECK(run(t, *separating) != apply_mhs(swapped, *separating));

  // Distinct families produce distinct production rows.
  const MhTransducer ts = from_mhs(sig, swapped, {1, 2, 3});
  CHECK(t.production_for("f", 2) != ts.production_for("f", 2));
}

TEST_CASE("product transducer realizes the composed family") {
  const Signature sig = binary_sig();
  const MonoidSpec full = MonoidSpec::predicate(MonoidKind::Full);
  const Hypersubstitution id = Hypersubstitution::identity(sig);

  const MultiHypersubstitution first(sig, full, {{1, make(sig, "f(x2,x1)")}}, id);
  const MultiHypersubstitution second(
      sig, full, {{2, make(sig, "f(f(x2,x1),x2)")}}, make(sig, "f(x1,x1)"));
  const MhTransducer t1 = from_mhs(sig, first, {1});
  const MhTransducer t2 = from_mhs(sig, second, {2});

  const MhTransducer both = product(sig, t1, t2);
  CHECK(both.colors() == std::set<int>{1, 2});
  CHECK(both.origin() == compose_ch(sig, first, second));

  SampleConfig small;
  small.exhaustive_depth = 2;
  CHECK(!equiv_to_mhs(sig, both, compose_ch(sig, first, second), small).has_value());

  // Composition of the realized maps, checked pointwise.
  TermGen gen(41);
  for (int i = 0; i < 30; ++i) {
    const ColoredTerm ct = gen.colored_term(sig, 3, 3, {1, 2, 3});
    CHECK(run(both, ct) == run(t1, run(t2, ct)));
  }

  // Incompatible monoid declarations are rejected.
  const MultiHypersubstitution listed =
      MultiHypersubstitution::identity(sig, MonoidSpec::explicit_set({id}));
  CHECK_THROWS_AS(product(sig, t1, from_mhs(sig, listed, {1})), DomainError);
}

TEST_CASE("derivation order does not change the result") {
  const Signature sig = binary_sig();
  const MonoidSpec full = MonoidSpec::predicate(MonoidKind::Full);
  TermGen gen(43);
  for (int i = 0; i < 50; ++i) {
    const MultiHypersubstitution rho = gen.mhs(sig, full, 3, 2);
    const MhTransducer t = from_mhs(sig, rho, rho.support());
    const ColoredTerm input = gen.colored_term(sig, 3, 2, {1, 2, 3, 4});

    DerivationState state = start_derivation(input);
    while (!state.pending.empty()) {
      const int pick = gen.below(static_cast<int>(state.pending.size()));
      auto it = state.pending.begin();
      std::advance(it, pick);
      state = derive_step(t, state, *it);
    }
    CHECK(state.current == run(t, input));
    CHECK(state.current == apply_mhs(rho, input));
  }
}
