#include "doctest.h"
#include "stv/analysis.hpp"
#include "stv/parser.hpp"
#include "testutil.hpp"

using namespace stv;

namespace {

BoundFunction succ() {
  BoundFunction b;
  b.kind = BoundFunction::Kind::Succ;
  return b;
}
BoundFunction iter(BoundFunction k) {
  BoundFunction b;
  b.kind = BoundFunction::Kind::Iter;
  b.kids.push_back(std::move(k));
  return b;
}

uint64_t ev(const BoundFunction& b, uint64_t n) {
  BoundValue v = eval_bound(b, BigNat(n));
  REQUIRE(v.exact.has_value());
  return v.exact->convert_to<uint64_t>();
}

// Brute force STV checking: enumerate loop/extension pairs directly.
bool brute_force_stv_ok(const Program& p, const Vocabulary&) {
  bool ok = true;
  walk(p, [&](const Program& loop) {
    if (loop.kind == Program::Kind::DoST) ok = false;
    if (loop.kind != Program::Kind::DoSTV) return;
    walk(loop.kids[0], [&](const Program& q) {
      if (q.kind != Program::Kind::Rev) return;
      if (q.rev.kind != Revision::Kind::FuncExt &&
          q.rev.kind != Revision::Kind::RelExt)
        return;
      for (IdIndex c : loop.variant)
        if (c == q.rev.id) ok = false;
    });
  });
  return ok;
}

} // namespace

TEST_CASE("check_stv accepts consuming loops and flags violations") {
  SUBCASE("a loop whose variant is only contracted passes") {
    ProgramUnit u = parse_program_unit(
        "vocab { fn e/0 fn 0/1 fn 1/1 fn 0b/1 fn 1b/1 fn a/0 fn t/0 }\n"
        "a <- e;\n"
        "do [def 0(a) or def 1(a)] [0, 1] {\n"
        "  if [def 0(a)] { 0b(a) <- 0(a); t <- 0(a); drop 0(a) }\n"
        "              { 1b(a) <- 1(a); t <- 1(a); drop 1(a) };\n"
        "  a := t; drop t\n"
        "}\n");
    CHECK(check_stv(u).ok);
  }
  SUBCASE("extending an eigen-identifier of the variant is rejected") {
    ProgramUnit u = parse_program_unit(
        "vocab { fn e/0 fn 0/1 fn a/0 fn b/0 }\n"
        "do [def 0(e)] [0] { 0(a) <- b }\n");
    StvReport r = check_stv(u);
    CHECK_FALSE(r.ok);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].what.find("'0'") != std::string::npos);
  }
  SUBCASE("unannotated loops are rejected") {
    ProgramUnit u = parse_program_unit(
        "vocab { fn e/0 fn 0/1 }\n"
        "do [def 0(e)] { drop 0(e) }\n");
    CHECK_FALSE(check_stv(u).ok);
  }
  SUBCASE("nested loops: inner extensions count against outer variants") {
    ProgramUnit u = parse_program_unit(
        "vocab { fn e/0 fn 0/1 fn 1/1 }\n"
        "do [def 0(e)] [0] { do [def 1(e)] [1] { 0(e) <- e } }\n");
    StvReport r = check_stv(u);
    CHECK_FALSE(r.ok);
  }
}

TEST_CASE("check_stv agrees with the brute-force checker") {
  std::mt19937 rng(5150);
  int mismatches = 0;
  for (int i = 0; i < 300; ++i) {
    testutil::ProgramGen gen(rng);
    testutil::RandomProgram rp = gen.generate();
    bool brute = brute_force_stv_ok(rp.body, rp.vocab);
    bool fast = check_stv(rp.body, rp.vocab).ok;
    if (brute != fast) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("bound assignment and evaluation") {
  SUBCASE("a single extension bounds to successor") {
    ProgramUnit u =
        parse_program_unit("vocab { fn e/0 fn 0/1 }\n0(e) <- e\n");
    BoundFunction b = bound(u);
    CHECK(b.kind == BoundFunction::Kind::Succ);
    CHECK(ev(b, 5) == 6);
  }
  SUBCASE("a sequence of k extensions bounds to n + k") {
    ProgramUnit u = parse_program_unit(
        "vocab { fn e/0 fn 0/1 fn 1/1 }\n"
        "0(e) <- e; 1(e) <- e; 0(0(e)) <- e\n");
    BoundFunction b = bound(u);
    for (uint64_t n : {0, 1, 7, 100}) CHECK(ev(b, n) == n + 3);
  }
  SUBCASE("a loop of one extension doubles") {
    ProgramUnit u = parse_program_unit(
        "vocab { fn e/0 fn 0/1 fn 1/1 }\n"
        "do [def 0(e)] [1] { 0(e) <- e }\n");
    BoundFunction b = bound(u);
    CHECK(b == iter(succ()));
    CHECK(ev(b, 4) == 8);
    CHECK(ev(b, 0) == 0); // zero iterations at zero
  }
  SUBCASE("nested iteration towers") {
    BoundFunction b = iter(iter(succ()));
    CHECK(ev(b, 3) == 24); // 3 -> 6 -> 12 -> 24
  }
  SUBCASE("identity cases") {
    BoundFunction b;
    CHECK(ev(b, 7) == 7);
    ProgramUnit u = parse_program_unit(
        "vocab { fn e/0 fn 0/1 }\n"
        "drop 0(e)\n");
    CHECK(bound(u).kind == BoundFunction::Kind::Id);
  }
  SUBCASE("branching takes the max") {
    ProgramUnit u = parse_program_unit(
        "vocab { fn e/0 fn 0/1 fn 1/1 }\n"
        "if [def 0(e)] { 0(e) <- e; 1(e) <- e } { drop 0(e) }\n");
    BoundFunction b = bound(u);
    CHECK(ev(b, 10) == 12);
  }
  SUBCASE("guards contribute nothing; unannotated loops are errors") {
    ProgramUnit u = parse_program_unit(
        "vocab { fn e/0 fn 0/1 }\n"
        "do [def 0(e)] { drop 0(e) }\n");
    CHECK_THROWS_AS(bound(u), Error);
  }
  SUBCASE("overflow is a value") {
    // iterate doubling from a large start under a tiny budget
    BoundFunction b = iter(iter(succ()));
    EvalBudget tiny;
    tiny.max_bits = 16;
    CHECK_FALSE(eval_bound(b, BigNat(40), tiny).exact.has_value());
  }
  SUBCASE("huge iteration counts overflow instead of spinning") {
    BoundFunction b = iter(succ());
    EvalBudget budget;
    budget.max_iterations = 1000;
    CHECK_FALSE(eval_bound(b, BigNat(10'000), budget).exact.has_value());
  }
}

TEST_CASE("the literal base case is falsified by a single extension") {
  ProgramUnit u =
      parse_program_unit("vocab { fn e/0 fn 0/1 fn 1/1 }\n1(e) <- e\n");
  PartialStructure in = testutil::bits("011");
  Outcome out = run(u, in);
  REQUIRE(out.halted);
  BoundFunction literal = bound(u, BoundBase::Literal);
  BoundValue cap = eval_bound(literal, BigNat(in.size()));
  REQUIRE(cap.exact.has_value());
  CHECK(BigNat(out.final_structure.size()) > *cap.exact); // 4 > 1
  // while the repaired base case holds with equality
  BoundValue cap2 = eval_bound(bound(u), BigNat(in.size()));
  CHECK(BigNat(out.final_structure.size()) == *cap2.exact);
}

TEST_CASE("bounds produced by bound() are monotone and inflationary") {
  std::mt19937 rng(4242);
  for (int i = 0; i < 200; ++i) {
    testutil::ProgramGen gen(rng);
    testutil::RandomProgram rp = gen.generate();
    StvReport r = check_stv(rp.body, rp.vocab);
    if (!r.ok) continue;
    BoundFunction b = bound(rp.body);
    uint64_t prev = 0;
    for (uint64_t n : {0, 1, 2, 3, 5, 8, 13}) {
      BoundValue v = eval_bound(b, BigNat(n));
      if (!v.exact) break;
      uint64_t val = v.exact->convert_to<uint64_t>();
      CHECK(val >= n);    // inflationary
      CHECK(val >= prev); // monotone on the sampled chain
      prev = val;
    }
  }
}

TEST_CASE("check_pr_bound validates a consuming walk") {
  ProgramUnit u = parse_program_unit(
      "vocab { fn e/0 fn 0/1 fn 1/1 fn 0b/1 fn 1b/1 fn a/0 fn t/0 }\n"
      "a <- e;\n"
      "do [def 0(a) or def 1(a)] [0, 1] {\n"
      "  if [def 0(a)] { 0b(a) <- 0(a); t <- 0(a); drop 0(a) }\n"
      "              { 1b(a) <- 1(a); t <- 1(a); drop 1(a) };\n"
      "  a := t; drop t\n"
      "}\n");
  std::vector<PartialStructure> inputs;
  std::mt19937 rng(31337);
  for (int i = 0; i < 20; ++i)
    inputs.push_back(testutil::bits(testutil::random_bits(rng, 24)));
  BoundCheckResult res = check_pr_bound(u, inputs);
  CHECK(res.inputs_checked == 20);
  CHECK(res.ok());
}
