#include "doctest.h"
#include "stv/analysis.hpp"
#include "stv/interp.hpp"
#include "stv/parser.hpp"
#include "stv/printer.hpp"
#include "stv/stdlib.hpp"
#include "stv/textio.hpp"
#include "testutil.hpp"

using namespace stv;
using testutil::bits;

namespace {

const std::vector<std::pair<char, std::string>> kBits = {{'0', "0"},
                                                         {'1', "1"}};

PartialStructure hat_bits(const std::string& w) {
  return word_structure({{'0', "0h"}, {'1', "1h"}}, "eh", w);
}

PartialStructure nat_chain(uint32_t n) {
  return word_structure({{'1', "s"}}, "z", std::string(n, '1'));
}

std::string run_concat(const ProgramUnit& u, const std::string& a,
                       const std::string& b) {
  PartialStructure in = oplus({bits(a), hat_bits(b)});
  PartialStructure out = run_transducer(u, in, {"e", "0", "1"});
  return word_decode(out, kBits, "e");
}

} // namespace

TEST_CASE("concatenation by splicing") {
  ProgramUnit u = gen_concat_splice();
  CHECK(run_concat(u, "01", "1") == "011");
  CHECK(run_concat(u, "", "101") == "101");
  CHECK(run_concat(u, "10", "") == "10");
  CHECK(run_concat(u, "", "") == "");
  std::mt19937 rng(123);
  for (int i = 0; i < 40; ++i) {
    std::string a = testutil::random_bits(rng, 20);
    std::string b = testutil::random_bits(rng, 20);
    CHECK(run_concat(u, a, b) == a + b);
  }
}

TEST_CASE("concatenation by copying leaves the second input intact") {
  ProgramUnit u = gen_concat_copy();
  CHECK(run_concat(u, "01", "1") == "011");
  CHECK(run_concat(u, "", "") == "");
  std::mt19937 rng(321);
  for (int i = 0; i < 25; ++i) {
    std::string a = testutil::random_bits(rng, 16);
    std::string b = testutil::random_bits(rng, 16);
    PartialStructure in = oplus({bits(a), hat_bits(b)});
    Outcome out = run(u, in);
    REQUIRE(out.halted);
    PartialStructure main =
        out.final_structure.reduct({"e", "0", "1"}).restrict_accessible();
    CHECK(word_decode(main, kBits, "e") == a + b);
    // second input reduct unchanged
    PartialStructure second =
        out.final_structure.reduct({"eh", "0h", "1h"}).restrict_accessible();
    CHECK(canonical_equal(second, hat_bits(b)));
    // fresh copy layout: |a|+|b|+1 accessible nodes in the output reduct
    CHECK(main.node_count() == a.size() + b.size() + 1);
  }
}

TEST_CASE("string multiplication") {
  ProgramUnit u = gen_string_mult();
  auto mult = [&](uint32_t n, const std::string& w) {
    PartialStructure in = oplus({nat_chain(n), bits(w)});
    PartialStructure out = run_transducer(u, in, {"e", "0", "1"});
    return word_decode(out, kBits, "e");
  };
  auto repeat = [](uint32_t n, const std::string& w) {
    std::string out;
    for (uint32_t i = 0; i < n; ++i) out += w;
    return out;
  };
  CHECK(mult(2, "01") == "0101");
  CHECK(mult(0, "111") == "");
  CHECK(mult(3, "1") == "111");
  CHECK(mult(4, "") == "");
  std::mt19937 rng(777);
  for (int i = 0; i < 20; ++i) {
    uint32_t n = rng() % 6;
    std::string w = testutil::random_bits(rng, 8);
    CHECK(mult(n, w) == repeat(n, w));
  }
}

TEST_CASE("string duplication") {
  ProgramUnit u = gen_string_dup();
  CHECK(check_stv(u).ok);
  auto dup_check = [&](const std::string& w) {
    PartialStructure in = bits(w);
    Outcome out = run(u, in);
    REQUIRE(out.halted);
    PartialStructure plain =
        out.final_structure.reduct({"e", "0", "1"}).restrict_accessible();
    CHECK(word_decode(plain, kBits, "e") == w);
    PartialStructure barred = out.final_structure.reduct({"eb", "0b", "1b"})
                                  .restrict_accessible()
                                  .rename({{"eb", "e"}, {"0b", "0"}, {"1b", "1"}});
    CHECK(canonical_equal(barred, bits(w)));
    // duplicate entries double the size
    CHECK(out.final_structure.size() == 2 * w.size());
  };
  dup_check("011");
  dup_check("");
  std::mt19937 rng(999);
  for (int i = 0; i < 20; ++i) dup_check(testutil::random_bits(rng, 24));
}

TEST_CASE("variant-annotated concatenation and multiplication") {
  ProgramUnit uc = gen_stv_concat();
  CHECK(check_stv(uc).ok);
  CHECK(run_concat(uc, "01", "1") == "011");
  std::mt19937 rng(246);
  for (int i = 0; i < 25; ++i) {
    std::string a = testutil::random_bits(rng, 16);
    std::string b = testutil::random_bits(rng, 16);
    CHECK(run_concat(uc, a, b) == a + b);
  }

  ProgramUnit um = gen_stv_mult();
  CHECK(check_stv(um).ok);
  for (auto [n, w] : std::vector<std::pair<uint32_t, std::string>>{
           {2, "01"}, {0, "1"}, {3, "10"}, {1, ""}, {5, "110"}}) {
    PartialStructure in = oplus({nat_chain(n), bits(w)});
    PartialStructure out = run_transducer(um, in, {"e", "0", "1"});
    std::string expect;
    for (uint32_t i = 0; i < n; ++i) expect += w;
    CHECK(word_decode(out, kBits, "e") == expect);
  }
}

TEST_CASE("exponentiation doubles the chain per numeral step") {
  ProgramUnit u = gen_exponentiation();
  CHECK(check_stv(u).ok);
  for (uint32_t n = 0; n <= 8; ++n) {
    PartialStructure in = nat_chain(n);
    PartialStructure out = run_transducer(u, in, {"y", "t"});
    std::string chain = word_decode(out, {{'1', "t"}}, "y");
    CHECK(chain.size() == (1u << n));
  }
}

TEST_CASE("generated programs survive print/parse round trips") {
  for (const auto& name :
       {"concat-splice", "string-mult", "string-dup", "stv-concat",
        "exponentiation"}) {
    ProgramUnit u = gen_by_name(name, nullptr);
    ProgramUnit back = parse_program_unit(pretty_print(u));
    CHECK(back.body == u.body);
  }
}
