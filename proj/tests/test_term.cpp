#include <doctest.h>

#include <set>
#include <vector>

#include "mhyp/parse.hpp"
#include "mhyp/term.hpp"

using namespace mhyp;

namespace {

Signature binary_sig() {
  Signature sig;
  sig.add("f", 2);
  return sig;
}

Signature mixed_sig() {
  Signature sig;
  sig.add("f", 2);
  sig.add("g", 1);
  sig.add("c", 0);
  return sig;
}

Term parse(const std::string& text, const Signature& sig) {
  return parse_term(text, sig);
}

}  // namespace

TEST_CASE("signature validation") {
  Signature sig;
  sig.add("f", 2);
  CHECK_THROWS_AS(sig.add("f", 2), DomainError);
  CHECK_THROWS_AS(sig.add("h", -1), DomainError);
  CHECK_THROWS_AS(sig.add("", 1), DomainError);
  sig.add("g", 3);
  CHECK(sig.max_arity() == 3);
  CHECK(sig.contains("f"));
  CHECK(!sig.contains("q"));
  CHECK(sig.arity("g") == 3);
  CHECK_THROWS_AS(sig.arity("q"), DomainError);
}

TEST_CASE("term construction and accessors") {
  const Term x1 = Term::var(1);
  CHECK(x1.is_var());
  CHECK(x1.var_index() == 1);
  CHECK_THROWS_AS(x1.symbol(), DomainError);
  CHECK_THROWS_AS(x1.children(), DomainError);
  CHECK_THROWS_AS(Term::var(0), DomainError);
  CHECK_THROWS_AS(Term::var(-3), DomainError);

  const Term t = Term::app("f", {Term::var(1), Term::var(2)});
  CHECK(!t.is_var());
  CHECK(t.symbol() == "f");
  CHECK(t.children().size() == 2);
  CHECK_THROWS_AS(t.var_index(), DomainError);
  CHECK(t.node_count() == 3);
}

TEST_CASE("term ordering and equality") {
  const Term x1 = Term::var(1);
  const Term x2 = Term::var(2);
  const Term f12 = Term::app("f", {x1, x2});
  CHECK(x1 == Term::var(1));
  CHECK(x1 != x2);
  CHECK(x1 < x2);
  CHECK(x1 < f12);  // variables order before applications
  CHECK(f12.compare(f12) == 0);
  CHECK(Term::app("f", {x1, x1}) < f12);
}

TEST_CASE("validate against a signature") {
  const Signature sig = binary_sig();
  CHECK_NOTHROW(validate(parse("f(x1,x2)", sig), sig));
  CHECK_THROWS_AS(validate(Term::app("f", {Term::var(1)}), sig), DomainError);
  CHECK_THROWS_AS(validate(Term::app("h", {}), sig), DomainError);
}

TEST_CASE("position basics") {
  const Position root = Position::root();
  CHECK(root.is_root());
  CHECK(root.length() == 0);
  const Position p21 = root.child(2).child(1);
  CHECK(p21.path() == std::vector<int>{2, 1});
  CHECK(p21.concat(Position({2})) == Position({2, 1, 2}));
  CHECK(root.is_prefix_of(p21));
  CHECK(p21.is_prefix_of(p21));
  CHECK(!p21.is_prefix_of(root));
  CHECK(Position({1}).parallel_to(Position({2})));
  CHECK(!Position({2}).parallel_to(p21));
  CHECK_THROWS_AS(Position({0}), DomainError);
  CHECK_THROWS_AS(root.child(0), DomainError);
}

TEST_CASE("position rendering") {
  CHECK(to_string(Position::root()) == "\xce\xb5");
  CHECK(to_string(Position({2, 1, 2})) == "212");
  CHECK(to_string(Position({12, 3})) == "12.3");
  CHECK(to_string(Position({1, 10, 2})) == "1.10.2");
}

TEST_CASE("position sets of a nested term") {
  const Signature sig = binary_sig();
  const Term t = parse("f(f(x1,x2),f(x1,x2))", sig);
  const PositionSets ps = positions(t);
  CHECK(ps.all.size() == 7);
  CHECK(ps.f_pos == std::set<Position>{Position::root(), Position({1}), Position({2})});
  CHECK(ps.x_pos == std::set<Position>{Position({1, 1}), Position({1, 2}),
                                       Position({2, 1}), Position({2, 2})});
}

TEST_CASE("subterm_at and subterms") {
  const Signature sig = binary_sig();
  const Term t = parse("f(f(x1,x2),f(x1,x2))", sig);
  CHECK(subterm_at(t, Position::root()) == t);
  CHECK(subterm_at(t, Position({1})) == parse("f(x1,x2)", sig));
  CHECK(subterm_at(t, Position({2, 1})) == Term::var(1));
  CHECK_THROWS_AS(subterm_at(t, Position({3})), DomainError);
  CHECK_THROWS_AS(subterm_at(t, Position({1, 1, 1})), DomainError);

  const std::set<Term> subs = subterms(t);
  CHECK(subs.size() == 4);  // x1, x2, f(x1,x2), t
  CHECK(subs.count(parse("f(x1,x2)", sig)) == 1);
  CHECK(subs.count(t) == 1);
}

TEST_CASE("depth and vars") {
  const Signature sig = mixed_sig();
  CHECK(depth(Term::var(5)) == 0);
  CHECK(depth(parse("c", sig)) == 0);
  CHECK(depth(parse("f(x1,x2)", sig)) == 1);
  CHECK(depth(parse("f(g(x1),x2)", sig)) == 2);
  CHECK(vars(parse("f(g(x3),c)", sig)) == std::set<int>{3});
  CHECK(vars(parse("c", sig)).empty());
}

TEST_CASE("occurrence replacement is simultaneous and one-pass") {
  const Signature sig = binary_sig();
  const Term t = parse("f(f(x1,x2),f(x1,x2))", sig);

  // One pass: nothing is substituted inside the inserted copies.
  CHECK(inductive_compose(parse("f(x1,x2)", sig), Term::var(1), parse("f(x1,x2)", sig)) ==
        parse("f(f(x1,x2),x2)", sig));

  // Every occurrence of the target is replaced.
  CHECK(inductive_compose(t, parse("f(x1,x2)", sig), Term::var(1)) ==
        parse("f(x1,x1)", sig));

  // Simultaneous swap of two variables.
  CHECK(inductive_compose(t, {{Term::var(1), Term::var(2)}, {Term::var(2), Term::var(1)}}) ==
        parse("f(f(x2,x1),f(x2,x1))", sig));

  // A target that does not occur is inert.
  CHECK(inductive_compose(t, Term::var(9), Term::var(1)) == t);

  // Nested targets would make the simultaneous form order-dependent.
  CHECK_THROWS_AS(inductive_compose(t, {{Term::var(1), Term::var(2)},
                                        {parse("f(x1,x2)", sig), Term::var(3)}}),
                  DomainError);
}

TEST_CASE("positional replacement") {
  const Signature sig = binary_sig();
  const Term t = parse("f(f(x1,x2),f(x1,x2))", sig);
  CHECK(positional_compose(t, Position({2, 1}), parse("f(x2,x2)", sig)) ==
        parse("f(f(x1,x2),f(f(x2,x2),x2))", sig));
  CHECK(positional_compose(t, Position::root(), Term::var(7)) == Term::var(7));
  CHECK_THROWS_AS(positional_compose(t, Position({1, 1, 1}), Term::var(1)), DomainError);

  // Parallel multi-replacement.
  CHECK(positional_compose(t, {{Position({1}), Term::var(3)}, {Position({2}), Term::var(4)}}) ==
        parse("f(x3,x4)", sig));
  CHECK_THROWS_AS(positional_compose(t, {{Position({1}), Term::var(3)},
                                         {Position({1, 1}), Term::var(4)}}),
                  DomainError);
}

TEST_CASE("composition chain through nested positions") {
  const Signature sig = binary_sig();
  const Term t = parse("f(f(x1,x2),f(x1,x2))", sig);
  const Term s = parse("f(f(x1,x2),x2)", sig);
  const Term r = parse("f(x1,x2)", sig);

  const Term route_a = positional_compose(t, Position({2}),
                                          positional_compose(s, Position({1, 2}), r));
  const Term route_b = positional_compose(positional_compose(t, Position({2}), s),
                                          Position({2, 1, 2}), r);
  CHECK(route_a == route_b);
  CHECK(to_string(route_a) == "f(f(x1,x2),f(f(x1,f(x1,x2)),x2))");
}

TEST_CASE("variable sequences and profiles") {
  const Signature sig = mixed_sig();
  const Term t = parse("f(f(x1,x2),f(x1,x2))", sig);
  CHECK(variable_sequence(t) == std::vector<int>{1, 2, 1, 2});
  CHECK(variable_sequence(parse("c", sig)).empty());

  const VariableProfile profile = variable_profile(parse("f(f(x1,x2),x2)", sig));
  CHECK(profile.leftmost == 1);
  CHECK(profile.rightmost == 2);
  CHECK(profile.vstr == std::vector<int>{1, 2, 2});
  CHECK_THROWS_AS(variable_profile(parse("c", sig)), DomainError);
}

TEST_CASE("term rendering") {
  const Signature sig = mixed_sig();
  CHECK(to_string(parse("f(x1,g(x2))", sig)) == "f(x1,g(x2))");
  CHECK(to_string(parse("c", sig)) == "c");
  CHECK(to_string(Term::var(kAuxVarBase + 3)) == "\xce\xbe"
                                                 "3");
  const Identity id{parse("f(x1,x2)", sig), Term::var(1)};
  CHECK(to_string(id) == "f(x1,x2) = x1");
}

TEST_CASE("auxiliary variable indices") {
  CHECK(!is_aux_var_index(1));
  CHECK(!is_aux_var_index(kAuxVarBase));
  CHECK(is_aux_var_index(kAuxVarBase + 1));
}
