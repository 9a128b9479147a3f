#include "stv/stdlib.hpp"

#include "emit.hpp"

namespace stv {

using namespace emit;

namespace {

// if-dispatch on which pointer continues the chain at `at`, then apply
// `step` with that pointer. Every branch runs only when its address is
// defined, so assignments inside never fire on undefined values.
std::string branch_on(const std::vector<std::string>& ptrs,
                      const std::string& at,
                      const std::function<Stmts(const std::string&)>& step,
                      size_t i = 0) {
  std::string addr = ptrs[i] + "(" + at + ")";
  if (i + 1 == ptrs.size()) return if_else("def " + addr, step(ptrs[i]), {});
  return if_else("def " + addr, step(ptrs[i]),
                 {branch_on(ptrs, at, step, i + 1)});
}

std::string any_defined(const std::vector<std::string>& ptrs,
                        const std::string& at) {
  std::string g;
  for (size_t i = 0; i < ptrs.size(); ++i) {
    if (i) g += " or ";
    g += "def " + ptrs[i] + "(" + at + ")";
  }
  return g;
}

// a := e; walk a to the end of its word chain (plain loop, non-destructive)
Stmts walk_to_end(const std::string& cursor, const std::string& nil,
                  const std::vector<std::string>& ptrs) {
  return {cursor + " <- " + nil,
          do_st(any_defined(ptrs, cursor),
                {branch_on(ptrs, cursor, [&](const std::string& p) {
                  return Stmts{cursor + " := " + p + "(" + cursor + ")"};
                })})};
}

// The two-loop word duplication: copies `ptrs` onto `bar` (kept) and onto a
// scratch set that is then restored onto `ptrs`. The variant of the first
// loop is the original pointer set, consumed while copying; the second
// loop's variant is the scratch set, consumed while restoring.
Stmts word_dup(Ctx& ctx, const std::string& nil,
               const std::vector<std::string>& ptrs,
               const std::vector<std::string>& bar, const std::string& px) {
  std::vector<std::string> hat;
  for (const auto& p : ptrs) hat.push_back(ctx.fn(p + "_" + px + "h", 1));
  std::string a = ctx.fn(px + "a", 0);
  std::string b = ctx.fn(px + "b", 0);

  Stmts out;
  out.push_back(a + " := " + nil);
  Stmts copy_body;
  copy_body.push_back(b + " := " + a);
  copy_body.push_back(branch_on(ptrs, a, [&](const std::string& p) {
    size_t idx = 0;
    while (ptrs[idx] != p) ++idx;
    return Stmts{bar[idx] + "(" + a + ") <- " + p + "(" + a + ")",
                 hat[idx] + "(" + a + ") <- " + p + "(" + a + ")",
                 a + " := " + p + "(" + a + ")",
                 "drop " + p + "(" + b + ")"};
  }));
  out.push_back(do_stv(any_defined(ptrs, a), ptrs, copy_body));

  out.push_back(a + " := " + nil);
  Stmts restore_body;
  restore_body.push_back(branch_on(hat, a, [&](const std::string& h) {
    size_t idx = 0;
    while (hat[idx] != h) ++idx;
    return Stmts{ptrs[idx] + "(" + a + ") <- " + h + "(" + a + ")",
                 "drop " + h + "(" + a + ")",
                 a + " := " + ptrs[idx] + "(" + a + ")"};
  }));
  out.push_back(do_stv(any_defined(hat, a), hat, restore_body));
  out.push_back("drop " + a);
  out.push_back("drop " + b);
  return out;
}

void use_bits(Ctx& ctx, const std::string& nil, const std::string& zero,
              const std::string& one) {
  Vocabulary v;
  v.add(nil, IdKind::Function, 0);
  v.add(zero, IdKind::Function, 1);
  v.add(one, IdKind::Function, 1);
  ctx.use(v);
}

} // namespace

ProgramUnit gen_concat_splice() {
  Ctx ctx;
  use_bits(ctx, "e", "0", "1");
  use_bits(ctx, "eh", "0h", "1h");
  std::string a = ctx.fn("a", 0);
  std::vector<std::string> ptrs = {"0", "1"};

  Stmts out = walk_to_end(a, "e", ptrs);
  // hook the second word's first pointer onto the junction
  out.push_back("0(" + a + ") <- 0h(eh)");
  out.push_back("1(" + a + ") <- 1h(eh)");
  out.push_back(branch_on(ptrs, a, [&](const std::string& p) {
    return Stmts{a + " := " + p + "(" + a + ")"};
  }));
  // copy the remaining hatted pointers over, advancing along them
  std::vector<std::string> hats = {"0h", "1h"};
  out.push_back(do_st(
      any_defined(hats, a),
      {branch_on(hats, a, [&](const std::string& h) {
        std::string p = h.substr(0, 1);
        return Stmts{p + "(" + a + ") <- " + h + "(" + a + ")",
                     a + " := " + h + "(" + a + ")"};
      })}));
  return ctx.parse(out);
}

ProgramUnit gen_concat_copy() {
  Ctx ctx;
  use_bits(ctx, "e", "0", "1");
  use_bits(ctx, "eh", "0h", "1h");
  std::string a = ctx.fn("a", 0);
  std::string b = ctx.fn("b", 0);
  std::string c = ctx.fn("c", 0);

  Stmts out = walk_to_end(a, "e", {"0", "1"});
  out.push_back(b + " <- eh");
  std::vector<std::string> hats = {"0h", "1h"};
  out.push_back(do_st(
      any_defined(hats, b),
      {"new " + c,
       branch_on(hats, b, [&](const std::string& h) {
         std::string p = h.substr(0, 1);
         return Stmts{p + "(" + a + ") <- " + c, a + " := " + c,
                      b + " := " + h + "(" + b + ")"};
       }),
       "drop " + c}));
  return ctx.parse(out);
}

ProgramUnit gen_string_mult() {
  Ctx ctx;
  Vocabulary nat;
  nat.add("z", IdKind::Function, 0);
  nat.add("s", IdKind::Function, 1);
  ctx.use(nat);
  use_bits(ctx, "e", "0", "1");
  std::string i = ctx.fn("i", 0);
  std::string r = ctx.fn("r", 0);
  std::string q = ctx.fn("q", 0);
  std::string b = ctx.fn("b", 0);
  std::string c = ctx.fn("c", 0);

  // The result is assembled on fresh nodes behind a fresh root and grafted
  // onto the word's root at the end, so that zero copies yield the empty
  // word and the input word is only read.
  Stmts out;
  out.push_back(i + " <- z");
  out.push_back("new " + r);
  out.push_back(q + " <- " + r);
  std::vector<std::string> ptrs = {"0", "1"};
  Stmts inner;
  inner.push_back("new " + c);
  inner.push_back(branch_on(ptrs, b, [&](const std::string& p) {
    return Stmts{p + "(" + q + ") <- " + c, b + " := " + p + "(" + b + ")"};
  }));
  inner.push_back(q + " := " + c);
  inner.push_back("drop " + c);
  out.push_back(do_st("def s(" + i + ")",
                      {b + " := e", do_st(any_defined(ptrs, b), inner),
                       i + " := s(" + i + ")"}));
  out.push_back("drop 0(e)");
  out.push_back("drop 1(e)");
  out.push_back(if_else("def 0(" + r + ")", {"0(e) <- 0(" + r + ")"}, {}));
  out.push_back(if_else("def 1(" + r + ")", {"1(e) <- 1(" + r + ")"}, {}));
  out.push_back("drop " + r);
  out.push_back("drop " + q);
  out.push_back("drop " + i);
  out.push_back("drop " + b);
  return ctx.parse(out);
}

ProgramUnit gen_string_dup() {
  Ctx ctx;
  use_bits(ctx, "e", "0", "1");
  Vocabulary bar;
  bar.add("eb", IdKind::Function, 0);
  bar.add("0b", IdKind::Function, 1);
  bar.add("1b", IdKind::Function, 1);
  ctx.use(bar);
  Stmts out;
  out.push_back("eb <- e");
  Stmts dup = word_dup(ctx, "e", {"0", "1"}, {"0b", "1b"}, "d");
  out.insert(out.end(), dup.begin(), dup.end());
  return ctx.parse(out);
}

ProgramUnit gen_stv_concat() {
  Ctx ctx;
  use_bits(ctx, "e", "0", "1");
  use_bits(ctx, "eh", "0h", "1h");
  // consumable copies of both inputs drive the two loops
  std::string c0 = ctx.fn("0c", 1), c1 = ctx.fn("1c", 1);
  std::string h0 = ctx.fn("0hc", 1), h1 = ctx.fn("1hc", 1);
  std::string a = ctx.fn("a", 0);

  Stmts out = word_dup(ctx, "e", {"0", "1"}, {c0, c1}, "u");
  Stmts dup2 = word_dup(ctx, "eh", {"0h", "1h"}, {h0, h1}, "v");
  out.insert(out.end(), dup2.begin(), dup2.end());

  out.push_back(a + " <- e");
  std::vector<std::string> copies = {c0, c1};
  std::vector<std::string> ptrs = {"0", "1"};
  out.push_back(do_stv(
      any_defined(copies, a), copies,
      {branch_on(copies, a, [&](const std::string& cp) {
        size_t idx = cp == c0 ? 0 : 1;
        return Stmts{"drop " + cp + "(" + a + ")",
                     a + " := " + ptrs[idx] + "(" + a + ")"};
      })}));
  out.push_back("0(" + a + ") <- 0h(eh)");
  out.push_back("1(" + a + ") <- 1h(eh)");
  out.push_back(branch_on(ptrs, a, [&](const std::string& p) {
    return Stmts{a + " := " + p + "(" + a + ")"};
  }));
  std::vector<std::string> hcopies = {h0, h1};
  std::vector<std::string> hats = {"0h", "1h"};
  out.push_back(do_stv(
      any_defined(hcopies, a), hcopies,
      {branch_on(hcopies, a, [&](const std::string& hc) {
        size_t idx = hc == h0 ? 0 : 1;
        return Stmts{ptrs[idx] + "(" + a + ") <- " + hats[idx] + "(" + a + ")",
                     "drop " + hc + "(" + a + ")",
                     a + " := " + hats[idx] + "(" + a + ")"};
      })}));
  out.push_back("drop " + a);
  return ctx.parse(out);
}

ProgramUnit gen_stv_mult() {
  Ctx ctx;
  Vocabulary nat;
  nat.add("z", IdKind::Function, 0);
  nat.add("s", IdKind::Function, 1);
  ctx.use(nat);
  use_bits(ctx, "e", "0", "1");
  std::string c0 = ctx.fn("0c", 1), c1 = ctx.fn("1c", 1);
  std::string i = ctx.fn("i", 0);
  std::string r = ctx.fn("r", 0);
  std::string q = ctx.fn("q", 0);
  std::string b = ctx.fn("b", 0);
  std::string c = ctx.fn("c", 0);
  std::string t = ctx.fn("t", 0);

  Stmts out;
  out.push_back(i + " <- z");
  out.push_back("new " + r);
  out.push_back(q + " <- " + r);

  std::vector<std::string> ptrs = {"0", "1"};
  std::vector<std::string> copies = {c0, c1};
  // each cycle duplicates the word afresh and consumes the copy while
  // appending it to the result; the outer variant is the numeral pointer,
  // contracted once per cycle
  Stmts cycle = word_dup(ctx, "e", ptrs, copies, "m");
  cycle.push_back(b + " := e");
  Stmts inner;
  inner.push_back("new " + c);
  inner.push_back(branch_on(copies, b, [&](const std::string& cp) {
    size_t idx = cp == c0 ? 0 : 1;
    return Stmts{"drop " + cp + "(" + b + ")",
                 ptrs[idx] + "(" + q + ") <- " + c,
                 b + " := " + ptrs[idx] + "(" + b + ")"};
  }));
  inner.push_back(q + " := " + c);
  inner.push_back("drop " + c);
  cycle.push_back(do_stv(any_defined(copies, b), copies, inner));
  cycle.push_back(t + " <- s(" + i + ")");
  cycle.push_back("drop s(" + i + ")");
  cycle.push_back(i + " := " + t);
  cycle.push_back("drop " + t);
  out.push_back(do_stv("def s(" + i + ")", {"s"}, cycle));

  out.push_back("drop 0(e)");
  out.push_back("drop 1(e)");
  out.push_back(if_else("def 0(" + r + ")", {"0(e) <- 0(" + r + ")"}, {}));
  out.push_back(if_else("def 1(" + r + ")", {"1(e) <- 1(" + r + ")"}, {}));
  out.push_back("drop " + r);
  out.push_back("drop " + q);
  out.push_back("drop " + i);
  out.push_back("drop " + b);
  return ctx.parse(out);
}

ProgramUnit gen_exponentiation() {
  Ctx ctx;
  Vocabulary nat;
  nat.add("z", IdKind::Function, 0);
  nat.add("s", IdKind::Function, 1);
  ctx.use(nat);
  std::string y = ctx.fn("y", 0);
  std::string t = ctx.fn("t", 1);
  std::string t1 = ctx.fn("t1", 1), t2 = ctx.fn("t2", 1);
  std::string i = ctx.fn("i", 0);
  std::string q = ctx.fn("q", 0);
  std::string c = ctx.fn("c", 0);
  std::string tk = ctx.fn("tk", 0);

  Stmts out;
  out.push_back(i + " <- z");
  out.push_back("new " + y);
  out.push_back("new " + c);
  out.push_back(t + "(" + y + ") <- " + c);
  out.push_back("drop " + c);

  // one doubling per numeral pointer: split the chain into two consumable
  // copies, then rebuild it with both copies appended on fresh nodes
  Stmts cycle = chain_copy_consume(ctx, y, t, {t1, t2}, "x");
  cycle.push_back(q + " := " + y);
  for (const std::string& cp : {t1, t2}) {
    std::string cur = ctx.fn("w_" + cp, 0);
    Stmts append = scan_consume(
        ctx, y, cp, cur,
        {if_else("def " + cp + "(" + cur + ")",
                 {"new " + c, t + "(" + q + ") <- " + c, q + " := " + c,
                  "drop " + c},
                 {})});
    cycle.insert(cycle.end(), append.begin(), append.end());
  }
  cycle.push_back(tk + " <- s(" + i + ")");
  cycle.push_back("drop s(" + i + ")");
  cycle.push_back(i + " := " + tk);
  cycle.push_back("drop " + tk);
  out.push_back(do_stv("def s(" + i + ")", {"s"}, cycle));
  out.push_back("drop " + i);
  out.push_back("drop " + q);
  return ctx.parse(out);
}

EnumeratorProgram gen_enumerator(const Vocabulary& w) {
  Ctx ctx;
  ctx.use(w);
  EnumSpec spec;
  for (const auto& e : w.entries()) {
    if (e.kind != IdKind::Function) continue;
    if (e.arity == 0)
      spec.tokens.push_back(e.name);
    else
      spec.funcs.emplace_back(e.name, e.arity);
  }
  Stmts out;
  EnumNames names = emit_enumerator(ctx, out, spec);
  EnumeratorProgram p{ctx.parse(out),
                      EnumeratorWitness{names.head, names.chain, names.set}};
  return p;
}

QuasiInverseProgram gen_quasi_inverse(const Vocabulary& w) {
  Ctx ctx;
  ctx.use(w);
  EnumSpec spec;
  spec.with_inverses = true;
  for (const auto& e : w.entries()) {
    if (e.kind != IdKind::Function) continue;
    if (e.arity == 0)
      spec.tokens.push_back(e.name);
    else
      spec.funcs.emplace_back(e.name, e.arity);
  }
  Stmts out;
  EnumNames names = emit_enumerator(ctx, out, spec);
  QuasiInverseProgram p{ctx.parse(out),
                        EnumeratorWitness{names.head, names.chain, names.set},
                        names.inverses};
  return p;
}

DuplicateFunctionsProgram gen_duplicate_functions(const Vocabulary& w) {
  Ctx ctx;
  ctx.use(w);
  EnumSpec spec;
  for (const auto& e : w.entries()) {
    if (e.kind != IdKind::Function) continue;
    if (e.arity == 0)
      spec.tokens.push_back(e.name);
    else
      spec.funcs.emplace_back(e.name, e.arity);
  }
  DuplicateFunctionsProgram result;
  for (const auto& e : w.entries()) {
    if (e.kind != IdKind::Function) continue;
    result.copies[e.name] = ctx.fn(e.name + "_d", e.arity);
  }
  Stmts out;
  EnumNames names = emit_enumerator(ctx, out, spec);
  for (const auto& t : spec.tokens)
    out.push_back(result.copies[t] + " <- " + t);
  for (const auto& [f, k] : spec.funcs) {
    const std::string& dup = result.copies[f];
    auto body = [&, f = f](const std::vector<std::string>& cs) {
      std::string src = app(f, cs);
      std::string dst = app(dup, cs);
      return Stmts{
          if_else("def " + src + " and not def " + dst,
                  {dst + " <- " + src}, {})};
    };
    Stmts scans = scan_tuples(ctx, names.head, names.chain, k, body,
                              f + "_cp_");
    out.insert(out.end(), scans.begin(), scans.end());
  }
  result.unit = ctx.parse(out);
  return result;
}

std::vector<std::string> stdlib_program_names() {
  return {"concat-splice", "concat-copy", "string-mult",
          "string-dup",    "stv-concat",  "stv-mult",
          "exponentiation", "enumerator", "quasi-inverse",
          "duplicate-functions"};
}

ProgramUnit gen_by_name(const std::string& name, const Vocabulary* vocab) {
  if (name == "concat-splice") return gen_concat_splice();
  if (name == "concat-copy") return gen_concat_copy();
  if (name == "string-mult") return gen_string_mult();
  if (name == "string-dup") return gen_string_dup();
  if (name == "stv-concat") return gen_stv_concat();
  if (name == "stv-mult") return gen_stv_mult();
  if (name == "exponentiation") return gen_exponentiation();
  auto need_vocab = [&]() -> const Vocabulary& {
    if (!vocab)
      throw Error("generator '" + name + "' needs a vocabulary (--vocab)");
    return *vocab;
  };
  if (name == "enumerator") return gen_enumerator(need_vocab()).unit;
  if (name == "quasi-inverse") return gen_quasi_inverse(need_vocab()).unit;
  if (name == "duplicate-functions")
    return gen_duplicate_functions(need_vocab()).unit;
  throw Error("unknown generator '" + name + "'");
}

} // namespace stv
