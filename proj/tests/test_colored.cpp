#include <doctest.h>

#include <map>
#include <set>

#include "mhyp/colored.hpp"
#include "mhyp/gen.hpp"
#include "mhyp/parse.hpp"

using namespace mhyp;

namespace {

Signature binary_sig() {
  Signature sig;
  sig.add("f", 2);
  return sig;
}

ColoredTerm cparse(const std::string& text, const Signature& sig) {
  return parse_colored_term(text, sig);
}

}  // namespace

TEST_CASE("coloration lookup and restriction") {
  const Coloration alpha(std::map<Position, int>{
      {Position::root(), 1}, {Position({1}), 1}, {Position({2}), 2}});
  CHECK(alpha.at(Position({2})) == 2);
  CHECK(alpha.assigns(Position({1})));
  CHECK(!alpha.assigns(Position({1, 1})));
  CHECK_THROWS_AS(alpha.at(Position({3})), DomainError);

  const Coloration below2 = alpha.restricted_to(Position({2}));
  CHECK(below2 == Coloration(std::map<Position, int>{{Position::root(), 2}}));
  CHECK(alpha.restricted_to(Position({1, 1})).size() == 0);
}

TEST_CASE("attaching colorations to terms") {
  const Signature sig = binary_sig();
  const Term t = parse_term("f(f(x1,x2),f(x1,x2))", sig);
  const Coloration alpha(std::map<Position, int>{
      {Position::root(), 1}, {Position({1}), 1}, {Position({2}), 2}});

  const ColoredTerm ct = ColoredTerm::attach(t, alpha);
  CHECK(ct == cparse("f^1(f^1(x1,x2),f^2(x1,x2))", sig));
  CHECK(ct.term() == t);
  CHECK(ct.coloration() == alpha);

  // The domain must be exactly the function positions.
  CHECK_THROWS_AS(ColoredTerm::attach(t, Coloration(std::map<Position, int>{
                                             {Position::root(), 1}, {Position({1}), 1}})),
                  DomainError);
  CHECK_THROWS_AS(
      ColoredTerm::attach(t, Coloration(std::map<Position, int>{{Position::root(), 1},
                                                                {Position({1}), 1},
                                                                {Position({2}), 2},
                                                                {Position({1, 1}), 2}})),
      DomainError);

  CHECK(ColoredTerm::attach_constant(t, 3) == cparse("f^3(f^3(x1,x2),f^3(x1,x2))", sig));
  CHECK(ColoredTerm::attach_constant(Term::var(4), 1) == ColoredTerm::var(4));
}

TEST_CASE("colored node accessors") {
  const Signature sig = binary_sig();
  const ColoredTerm ct = cparse("f^1(x1,x2)", sig);
  CHECK(ct.symbol() == "f");
  CHECK(ct.color() == 1);
  CHECK(ct.children().size() == 2);
  CHECK(ct.node_count() == 3);
  CHECK_THROWS_AS(ct.var_index(), DomainError);
  CHECK_THROWS_AS(ColoredTerm::var(1).color(), DomainError);
  CHECK_THROWS_AS(ColoredTerm::app("f", -1, {ColoredTerm::var(1), ColoredTerm::var(2)}),
                  DomainError);
  CHECK_THROWS_AS(validate(ColoredTerm::app("f", 1, {ColoredTerm::var(1)}), sig),
                  DomainError);
}

TEST_CASE("equality of colored terms includes the colors") {
  const Signature sig = binary_sig();
  CHECK(cparse("f^1(x1,x2)", sig) == cparse("f^1(x1,x2)", sig));
  CHECK(cparse("f^1(x1,x2)", sig) != cparse("f^2(x1,x2)", sig));
  CHECK(cparse("f^1(x1,x2)", sig).term() == cparse("f^2(x1,x2)", sig).term());
}

TEST_CASE("colored restriction and subterms") {
  const Signature sig = binary_sig();
  const ColoredTerm cs = cparse("f^3(f^2(x1,x2),x2)", sig);
  CHECK(restrict_to(cs, Position({1})) == cparse("f^2(x1,x2)", sig));
  CHECK(restrict_to(cs, Position({1, 2})) == ColoredTerm::var(2));
  CHECK_THROWS_AS(restrict_to(cs, Position({2, 1})), DomainError);

  // {cs, f^2(x1,x2), x1, x2}: the two x2 leaves coincide.
  CHECK(colored_subterms(cs).size() == 4);

  const ColoredTerm ct = cparse("f^1(f^1(x1,x2),f^2(x1,x2))", sig);
  CHECK(colored_subterms(ct).size() == 5);  // colors separate the two children
}

TEST_CASE("colored occurrence replacement distinguishes colors") {
  const Signature sig = binary_sig();
  const ColoredTerm ct = cparse("f^1(f^1(x1,x2),f^2(x1,x2))", sig);

  CHECK(inductive_compose(ct, cparse("f^1(x1,x2)", sig), ColoredTerm::var(1)) ==
        cparse("f^1(x1,f^2(x1,x2))", sig));
  CHECK(inductive_compose(ct, cparse("f^2(x1,x2)", sig), cparse("f^9(x2,x2)", sig)) ==
        cparse("f^1(f^1(x1,x2),f^9(x2,x2))", sig));
  CHECK(inductive_compose(ct, {{ColoredTerm::var(1), ColoredTerm::var(2)},
                               {ColoredTerm::var(2), ColoredTerm::var(1)}}) ==
        cparse("f^1(f^1(x2,x1),f^2(x2,x1))", sig));
  CHECK_THROWS_AS(inductive_compose(ct, {{ColoredTerm::var(1), ColoredTerm::var(2)},
                                         {cparse("f^1(x1,x2)", sig), ColoredTerm::var(3)}}),
                  DomainError);
}

TEST_CASE("colored positional replacement keeps outside colors") {
  const Signature sig = binary_sig();
  const ColoredTerm ct = cparse("f^1(f^1(x1,x2),f^2(x1,x2))", sig);
  const ColoredTerm repl = cparse("f^7(x2,x1)", sig);

  const ColoredTerm out = positional_compose(ct, Position({2}), repl);
  CHECK(out == cparse("f^1(f^1(x1,x2),f^7(x2,x1))", sig));
  CHECK(positional_compose(ct, Position::root(), repl) == repl);
  CHECK(positional_compose(ct, {{Position({1}), ColoredTerm::var(3)},
                                {Position({2}), ColoredTerm::var(4)}}) ==
        cparse("f^1(x3,x4)", sig));
  CHECK_THROWS_AS(positional_compose(ct, {{Position({1}), repl},
                                          {Position({1, 1}), repl}}),
                  DomainError);
}

TEST_CASE("colored composition chain on the nested pair") {
  const Signature sig = binary_sig();
  const ColoredTerm ct = cparse("f^1(f^1(x1,x2),f^2(x1,x2))", sig);
  const ColoredTerm cs = cparse("f^3(f^2(x1,x2),x2)", sig);
  const ColoredTerm cr = cparse("f^3(x1,x2)", sig);

  const ColoredTerm route_a =
      positional_compose(ct, Position({2}), positional_compose(cs, Position({1, 2}), cr));
  const ColoredTerm route_b = positional_compose(
      positional_compose(ct, Position({2}), cs), Position({2, 1, 2}), cr);
  CHECK(route_a == route_b);
  CHECK(to_string(route_a) == "f^1(f^1(x1,x2),f^3(f^2(x1,f^3(x1,x2)),x2))");
}

TEST_CASE("replacement coloration merges as expected") {
  const Signature sig = binary_sig();
  TermGen gen(7);
  const std::vector<int> colors{1, 2, 3};
  for (int i = 0; i < 50; ++i) {
    const ColoredTerm host = gen.colored_term(sig, 3, 2, colors);
    const ColoredTerm repl = gen.colored_term(sig, 2, 2, colors);
    const Position p = gen.position_in(host.term());

    const ColoredTerm out = positional_compose(host, p, repl);

    // Expected coloration: the host's entries away from p, plus the
    // replacement's entries shifted below p.
    std::map<Position, int> expected;
    const Coloration host_col = host.coloration();
    for (const auto& [pos, color] : host_col.assignment()) {
      if (!p.is_prefix_of(pos)) expected.emplace(pos, color);
    }
    const Coloration repl_col = repl.coloration();
    for (const auto& [pos, color] : repl_col.assignment()) {
      expected.emplace(p.concat(pos), color);
    }
    CHECK(out.term() == positional_compose(host.term(), p, repl.term()));
    CHECK(out.coloration() == Coloration(expected));
  }
}

TEST_CASE("colored rendering") {
  Signature sig;
  sig.add("f", 2);
  sig.add("c", 0);
  CHECK(to_string(cparse("f^1(x1,c^2)", sig)) == "f^1(x1,c^2)");
  CHECK(to_string(Coloration(std::map<Position, int>{{Position::root(), 1},
                                                     {Position({2}), 3}})) ==
        "{\xce\xb5:1, 2:3}");
  const ColoredIdentity id{cparse("f^1(x1,x2)", sig), ColoredTerm::var(1)};
  CHECK(to_string(id) == "f^1(x1,x2) = x1");
}
