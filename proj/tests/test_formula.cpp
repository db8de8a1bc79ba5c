#include <doctest.h>

#include "bass/formula.hpp"
#include "support.hpp"

using namespace bass;
using namespace bass::testing;

namespace {

Adf small_adf() {
  return Adf({"a", "b", "c"}, {Formula::constant(true), (!Formula::var("a")) | Formula::var("c"),
                               Formula::var("b")});
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

/// Per-condition truth tables over the arguments of `reference`.
bool same_functions(const Adf& a, const Adf& b, const Adf& reference) {
  if (a.arguments() != b.arguments()) return false;
  for (const auto& i : all_interpretations(reference.size(), true)) {
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (evaluate(a.condition(s), a, i) != evaluate(b.condition(s), b, i)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("parse_adf: small ADF") {
  const Adf adf = parse_adf(kSmallAdf);
  CHECK(adf == small_adf());
  CHECK(adf.arguments() == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("parse_adf: whitespace, comments and free inputs") {
  const Adf adf = parse_adf("% a comment\n  s( a ) .\n\n ac( a ,\n a ).  ");
  REQUIRE(adf.size() == 1);
  CHECK(adf.free_inputs() == std::vector<std::size_t>{0});
}

TEST_CASE("parse_adf: argument order follows declarations, not conditions") {
  const Adf adf = parse_adf("ac(y, x). s(y). s(x). ac(x, c(f)).");
  CHECK(adf.arguments() == std::vector<std::string>{"y", "x"});
  CHECK(adf.condition(0) == Formula::var("x"));
}

TEST_CASE("parse_adf: n-ary and/or fold to the left") {
  const Adf adf = parse_adf("s(a). s(b). s(c). ac(a, and(a,b,c)). ac(b,b). ac(c,c).");
  CHECK(adf.condition(0) == ((Formula::var("a") & Formula::var("b")) & Formula::var("c")));
}

TEST_CASE("parse_adf: errors") {
  CHECK_THROWS_AS(parse_adf("s(a). ac(a, b)."), ParseError);
  CHECK_THROWS_AS(parse_adf("s(a). ac(a, a). ac(a, c(v))."), ParseError);
  CHECK_THROWS_AS(parse_adf("s(a). s(b). ac(a, a)."), ParseError);
  CHECK_THROWS_AS(parse_adf("s(a). ac(b, a)."), ParseError);
  CHECK_THROWS_AS(parse_adf("s(a). s(a). ac(a,a)."), ParseError);
  CHECK_THROWS_AS(parse_adf("s(a). ac(a, nand(a,a))."), ParseError);
  CHECK_THROWS_AS(parse_adf("s(a). ac(a, c(x))."), ParseError);

  try {
    parse_adf("s(a).\nac(a, and(a,\n   b)).");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 4);
  }
  try {
    parse_adf("s(a).\nac(a a).");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 6);
  }
}

TEST_CASE("write_adf") {
  const Adf single({"a"}, {Formula::var("a")});
  CHECK(trim(write_adf(single)) == "s(a).\nac(a,a).");
  CHECK(parse_adf(write_adf(small_adf())) == small_adf());
}

TEST_CASE("adf round-trip is structural identity on random ADFs") {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const Adf adf = random_adf(rng, n, 5);
    CHECK(parse_adf(write_adf(adf)) == adf);
  }
}

TEST_CASE("parse_bnet: small ADF") {
  const Adf adf = parse_bnet("targets, factors\na, 1\nb, !a | c\nc, b");
  CHECK(adf == small_adf());
}

TEST_CASE("parse_bnet: free inputs and precedence") {
  const Adf self = parse_bnet("targets, factors\nx, x");
  CHECK(self.free_inputs() == std::vector<std::size_t>{0});

  const Adf inputs = parse_bnet("targets, factors\n# comment\nout, in1 & !in2 | in1\n");
  CHECK(inputs.arguments() == std::vector<std::string>{"out", "in1", "in2"});
  CHECK(inputs.free_inputs() == std::vector<std::size_t>{1, 2});
  const Formula expected =
      (Formula::var("in1") & !Formula::var("in2")) | Formula::var("in1");
  CHECK(inputs.condition(0) == expected);

  const Adf nested = parse_bnet("a, !(a & (b | 0))\nb, 1");
  CHECK(nested.condition(0) == !(Formula::var("a") & (Formula::var("b") | Formula::constant(false))));
}

TEST_CASE("parse_bnet: errors") {
  CHECK_THROWS_AS(parse_bnet("targets, factors\na, b\na, 1"), ParseError);
  CHECK_THROWS_AS(parse_bnet("targets, factors\na, b &"), ParseError);
  CHECK_THROWS_AS(parse_bnet("targets, factors\na b"), ParseError);
  CHECK_THROWS_AS(parse_bnet("targets, factors\na, (b | c"), ParseError);
  try {
    parse_bnet("targets, factors\na, b\nc, a ^ b");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 6);
  }
}

TEST_CASE("write_bnet: small ADF and the xor rewrite") {
  CHECK(trim(write_bnet(small_adf())) == "targets, factors\na, 1\nb, !a | c\nc, b");
  const Adf x({"a", "b", "c"}, {Formula::binary(FormulaKind::Xor, Formula::var("a"), Formula::var("b")),
                                Formula::var("b"), Formula::var("c")});
  CHECK(trim(write_bnet(x)) == "targets, factors\na, (a & !b) | (!a & b)\nb, b\nc, c");
}

TEST_CASE("write_bnet emits only the bnet connectives") {
  Rng rng(113);
  for (int trial = 0; trial < 30; ++trial) {
    const std::string text = write_bnet(random_adf(rng, 5, 4));
    CHECK(text.find("xor") == std::string::npos);
    for (char c : text.substr(text.find('\n') + 1)) {
      const bool allowed = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ' ' ||
                           c == ',' || c == '\n' || c == '&' || c == '|' || c == '!' || c == '(' ||
                           c == ')';
      CHECK(allowed);
    }
  }
}

TEST_CASE("derived-connective elimination preserves every condition exactly") {
  Rng rng(127);
  const auto names = argument_names(6);
  const Adf carrier(names, std::vector<Formula>(6, Formula::constant(true)));
  for (int trial = 0; trial < 200; ++trial) {
    const Formula f = random_formula(rng, names, 5);
    const Formula g = eliminate_derived_connectives(f);
    CHECK(g.tree_size() == expanded_size(f));
    for (const auto& i : all_interpretations(6, true)) {
      CHECK(evaluate(f, carrier, i) == evaluate(g, carrier, i));
    }
  }
}

TEST_CASE("bnet round-trip preserves condition truth tables") {
  Rng rng(131);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const Adf adf = random_adf(rng, n, 4, false);
    const Adf back = parse_bnet(write_bnet(adf));
    CHECK(same_functions(adf, back, adf));
  }
  // Derived connectives too: the rewrite happens on the way out.
  for (int trial = 0; trial < 40; ++trial) {
    const Adf adf = random_adf(rng, 5, 4, true);
    CHECK(same_functions(adf, parse_bnet(write_bnet(adf)), adf));
  }
}

TEST_CASE("write_bnet: node budget") {
  Formula f = Formula::var("a");
  for (int i = 0; i < 30; ++i) f = Formula::binary(FormulaKind::Xor, f, Formula::var("a"));
  const Adf adf({"a"}, {f});
  CHECK(expanded_size(f) > 1000);
  try {
    write_bnet(adf, 1000);
    FAIL("expected the budget to be exceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.argument() == "a");
  }
  // Small enough nesting fits in the default budget.
  Formula g = Formula::var("a");
  for (int i = 0; i < 5; ++i) g = Formula::binary(FormulaKind::Xor, g, Formula::var("a"));
  CHECK_NOTHROW(write_bnet(Adf({"a"}, {g})));
}

TEST_CASE("Adf validation") {
  CHECK_THROWS_AS(Adf({"a", "a"}, {Formula::var("a"), Formula::var("a")}), AdfError);
  CHECK_THROWS_AS(Adf({"a"}, {Formula::var("b")}), AdfError);
  CHECK_THROWS_AS(Adf({"a"}, {}), AdfError);
  CHECK(Adf().size() == 0);
}
