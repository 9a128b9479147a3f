#include "doctest.h"
#include "stv/parser.hpp"
#include "stv/printer.hpp"
#include "testutil.hpp"

using namespace stv;

TEST_CASE("free_name suffixes the least unused natural") {
  Vocabulary v;
  CHECK(v.free_name("b") == "b");
  v.add("b", IdKind::Function, 0);
  CHECK(v.free_name("b") == "b1");
  v.add("b1", IdKind::Function, 0);
  CHECK(v.free_name("b") == "b2");
}

TEST_CASE("assignment desugars to the four-revision sequence") {
  ProgramUnit u = parse_program_unit(
      "vocab { fn e/0 fn a/0 }\n"
      "a := e\n");
  REQUIRE(u.body.kind == Program::Kind::Seq);
  REQUIRE(u.body.kids.size() == 4);
  // fresh token b added to the vocabulary
  REQUIRE(u.vocab->find("b").has_value());
  IdIndex b = *u.vocab->find("b");
  IdIndex a = *u.vocab->find("a");
  IdIndex e = *u.vocab->find("e");
  CHECK(u.body.kids[0].rev ==
        build::r_ext(b, {}, Term(e))); // b <- e
  CHECK(u.body.kids[1].rev == build::r_contr(a, {}));
  CHECK(u.body.kids[2].rev == build::r_ext(a, {}, Term(b)));
  CHECK(u.body.kids[3].rev == build::r_contr(b, {}));
}

TEST_CASE("compound inception and deletion desugar") {
  ProgramUnit u = parse_program_unit(
      "vocab { fn e/0 fn 0/1 }\n"
      "new 0(e);\n"
      "del 0(e)\n");
  REQUIRE(u.body.kind == Program::Kind::Seq);
  REQUIRE(u.body.kids.size() == 5); // 3 (new) + 2 (del)
  CHECK(u.body.kids[0].rev.kind == Revision::Kind::Inception);
  CHECK(u.body.kids[1].rev.kind == Revision::Kind::FuncExt);
  CHECK(u.body.kids[2].rev.kind == Revision::Kind::FuncContr);
  CHECK(u.body.kids[3].rev.kind == Revision::Kind::FuncExt);
  CHECK(u.body.kids[4].rev.kind == Revision::Kind::Deletion);
}

TEST_CASE("do with a variant bracket parses to an annotated loop") {
  ProgramUnit u = parse_program_unit(
      "vocab { fn i/0 fn s/1 }\n"
      "do [def s(i)] [s] { i := s(i) }\n");
  REQUIRE(u.body.kind == Program::Kind::DoSTV);
  CHECK(u.body.variant == std::vector<IdIndex>{*u.vocab->find("s")});
  CHECK(u.body.kids[0].kind == Program::Kind::Seq);
  CHECK(u.body.kids[0].kids.size() == 4);
}

TEST_CASE("a concatenation-flavoured program parses") {
  // splice the second word onto the first: two loops, hook-up in between
  const char* text =
      "vocab { fn e/0 fn 0/1 fn 1/1 fn eh/0 fn 0h/1 fn 1h/1 fn a/0 }\n"
      "a <- e;\n"
      "do [def 0(a) or def 1(a)] {\n"
      "  if [def 0(a)] { a := 0(a) } { a := 1(a) }\n"
      "};\n"
      "0(a) <- 0h(eh);\n"
      "1(a) <- 1h(eh);\n"
      "if [def 0(a)] { a := 0(a) } { if [def 1(a)] { a := 1(a) } {} };\n"
      "do [def 0h(a) or def 1h(a)] {\n"
      "  if [def 0h(a)] { 0(a) <- 0h(a); a := 0(a) } { 1(a) <- 1h(a); a := 1(a) }\n"
      "}\n";
  ProgramUnit u = parse_program_unit(text);
  REQUIRE(u.body.kind == Program::Kind::Seq);
  int loops = 0;
  walk(u.body, [&](const Program& p) {
    if (p.kind == Program::Kind::DoST) ++loops;
  });
  CHECK(loops == 2);
}

TEST_CASE("parse errors carry positions and causes") {
  CHECK_THROWS_WITH_AS(parse_program_unit("vocab { fn e/0 }\nq <- e\n"),
                       doctest::Contains("unknown identifier"), Error);
  CHECK_THROWS_WITH_AS(parse_program_unit("vocab { fn e/0 fn 0/1 }\n0(e,e) <- e\n"),
                       doctest::Contains("arity mismatch"), Error);
  CHECK_THROWS_WITH_AS(
      parse_program_unit("vocab { fn e/0 fn 0/1 }\ndo [def 0(e)] [e] {}\n"),
      doctest::Contains("positive arity"), Error);
  CHECK_THROWS_WITH_AS(parse_program_unit("vocab { fn e/0 }\ndef e\n"),
                       doctest::Contains("reserved"), Error);
  // relation identifier in address position
  CHECK_THROWS_WITH_AS(
      parse_program_unit("vocab { fn e/0 rel R/1 }\ne <- R(e)\n"),
      doctest::Contains("address position"), Error);
}

TEST_CASE("guard precedence: not > and > or") {
  ProgramUnit u = parse_program_unit(
      "vocab { fn e/0 fn a/0 rel E/1 }\n"
      "if [not def a and def e or E(e)] {} {}\n");
  const Guard& g = u.body.guard;
  REQUIRE(g.kind == Guard::Kind::Or);
  REQUIRE(g.kids[0].kind == Guard::Kind::And);
  CHECK(g.kids[0].kids[0].kind == Guard::Kind::Not);
  CHECK(g.kids[1].test.kind == Test::Kind::Relational);

  // parentheses override
  ProgramUnit u2 = parse_program_unit(
      "vocab { fn e/0 fn a/0 rel E/1 }\n"
      "if [not (def a and (def e or E(e)))] {} {}\n");
  CHECK(u2.body.guard.kind == Guard::Kind::Not);
}

TEST_CASE("parse after print is the identity on ASTs") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 200; ++i) {
    testutil::ProgramGen gen(rng);
    testutil::RandomProgram rp = gen.generate();
    ProgramUnit unit{std::make_shared<Vocabulary>(rp.vocab), rp.body};
    std::string text = pretty_print(unit);
    ProgramUnit back = parse_program_unit(text);
    CAPTURE(text);
    REQUIRE(*back.vocab == *unit.vocab);
    REQUIRE(back.body == unit.body);
  }
}

TEST_CASE("desugared assignments print in desugared form") {
  ProgramUnit u = parse_program_unit(
      "vocab { fn e/0 fn a/0 }\n"
      "a := e\n");
  std::string printed = pretty_print(u);
  CHECK(printed.find(":=") == std::string::npos);
  CHECK(printed.find("b <- e") != std::string::npos);
  CHECK(printed.find("drop a") != std::string::npos);
  // and the printed form re-parses to the same AST
  ProgramUnit back = parse_program_unit(printed);
  CHECK(back.body == u.body);
}
