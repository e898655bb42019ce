#include <doctest.h>

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

}  // namespace

TEST_CASE("terms round-trip through the parser") {
  const Signature sig = mixed_sig();
  for (const char* text : {"x1", "x12", "c", "g(x1)", "f(x1,g(x2))",
                           "f(f(x1,x2),f(x1,x2))", "f(c,g(c))"}) {
    CAPTURE(text);
    CHECK(to_string(parse_term(text, sig)) == text);
  }
}

TEST_CASE("whitespace is insignificant") {
  const Signature sig = mixed_sig();
  CHECK(parse_term("  f ( x1 , g( x2 ) ) ", sig) == parse_term("f(x1,g(x2))", sig));
}

TEST_CASE("parse errors carry offsets") {
  const Signature sig = binary_sig();

  try {
    parse_term("f(x1,h(x2))", sig);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);  // the unknown symbol 'h'
  }

  CHECK_THROWS_AS(parse_term("f(x1", sig), ParseError);
  CHECK_THROWS_AS(parse_term("f(x1,x2) x", sig), ParseError);
  CHECK_THROWS_AS(parse_term("", sig), ParseError);
  CHECK_THROWS_AS(parse_term("f(x1,x2", sig), ParseError);
  CHECK_THROWS_AS(parse_term("f(x1 x2)", sig), ParseError);
}

TEST_CASE("arity is enforced while parsing") {
  const Signature sig = mixed_sig();
  CHECK_THROWS(parse_term("f(x1)", sig));
  CHECK_THROWS(parse_term("f(x1,x2,x3)", sig));
  CHECK_THROWS(parse_term("c(x1)", sig));
  CHECK_THROWS(parse_term("g()", sig));
}

TEST_CASE("variable index validation") {
  const Signature sig = binary_sig();
  CHECK_THROWS_AS(parse_term("x0", sig), ParseError);
  CHECK_THROWS_AS(parse_term("x01", sig), ParseError);
  CHECK(parse_term("x9999999", sig).var_index() == 9999999);
  CHECK_THROWS_AS(parse_term("x10000000", sig), ParseError);
  CHECK_THROWS_AS(parse_term("x16777216", sig), ParseError);
}

TEST_CASE("auxiliary variables need an explicit opt-in") {
  const Signature sig = binary_sig();
  CHECK_THROWS_AS(parse_term("\xce\xbe"
                             "1",
                             sig),
                  ParseError);

  ParseOptions opts;
  opts.allow_aux_vars = true;
  const Term xi2 = parse_term("\xce\xbe"
                              "2",
                              sig, opts);
  CHECK(xi2.var_index() == kAuxVarBase + 2);
  CHECK(to_string(xi2) == "\xce\xbe"
                          "2");
  const Term t = parse_term("f(\xce\xbe"
                            "2,\xce\xbe"
                            "1)",
                            sig, opts);
  CHECK(t.children()[0].var_index() == kAuxVarBase + 2);
}

TEST_CASE("positions parse in both spellings") {
  const Signature sig = binary_sig();
  CHECK(parse_position("", sig) == Position::root());
  CHECK(parse_position("\xce\xb5", sig) == Position::root());
  CHECK(parse_position("212", sig) == Position({2, 1, 2}));
  CHECK(parse_position("2.1.2", sig) == Position({2, 1, 2}));
  CHECK_THROWS(parse_position("0", sig));
  CHECK_THROWS(parse_position("3", sig));  // beyond the maximum arity

  Signature wide;
  wide.add("h", 12);
  CHECK(parse_position("12.3", wide) == Position({12, 3}));
  CHECK(to_string(parse_position("12.3", wide)) == "12.3");
}

TEST_CASE("identities parse") {
  const Signature sig = binary_sig();
  const Identity id = parse_identity("f(x1,x2) = f(x2,x1)", sig);
  CHECK(id.lhs == parse_term("f(x1,x2)", sig));
  CHECK(id.rhs == parse_term("f(x2,x1)", sig));
  CHECK_THROWS(parse_identity("f(x1,x2)", sig));
  CHECK_THROWS(parse_identity("f(x1,x2) = f(x2,x1) = x1", sig));
}

TEST_CASE("colored terms round-trip") {
  const Signature sig = mixed_sig();
  for (const char* text : {"x1", "g^2(x1)", "f^1(x1,g^2(x2))", "c^3",
                           "f^1(f^1(x1,x2),f^2(x1,x2))"}) {
    CAPTURE(text);
    CHECK(to_string(parse_colored_term(text, sig)) == text);
  }
}

TEST_CASE("colored parsing enforces the color markers") {
  const Signature sig = mixed_sig();
  CHECK_THROWS_AS(parse_colored_term("f(x1,x2)", sig), ParseError);
  CHECK_THROWS_AS(parse_colored_term("f^1(x1,g(x2))", sig), ParseError);
  CHECK_THROWS_AS(parse_colored_term("f^(x1,x2)", sig), ParseError);
  CHECK_THROWS_AS(parse_term("f^1(x1,x2)", sig), ParseError);

  const ColoredIdentity id =
      parse_colored_identity("f^1(x1,x2) = f^2(x2,x1)", sig);
  CHECK(id.lhs.color() == 1);
  CHECK(id.rhs.color() == 2);
}
