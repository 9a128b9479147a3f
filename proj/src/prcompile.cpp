#include "stv/prcompile.hpp"

#include "emit.hpp"
#include "stv/interp.hpp"
#include "stv/parser.hpp"

namespace stv {

using namespace emit;

namespace {

// A slot is a region of the shared universe holding algebra values as a
// hash-consed term dag over its own copy of the constructor names, plus a
// root token designating one value. Slots are only ever extended, so values
// can be shared freely; readers enumerate a slot, copy the sub-dag they
// need and restore what the enumeration consumed.
struct Slot {
  std::vector<std::string> ctors; // parallel to the signature constructors
  std::string root;               // token or address text denoting the value
};

struct PrCtx {
  Ctx& ctx;
  const FreeAlgebraSignature& sig;
  int site = 0;

  std::string tag() { return "s" + std::to_string(site++) + "_"; }
};

EnumSpec slot_spec(const PrCtx& pc, const Slot& slot, bool with_inverses,
                   const std::string& px) {
  EnumSpec spec;
  spec.with_inverses = with_inverses;
  spec.prefix = px;
  const auto& ctors = pc.sig.constructors();
  for (size_t i = 0; i < ctors.size(); ++i) {
    if (ctors[i].second == 0)
      spec.tokens.push_back(slot.ctors[i]);
    else
      spec.funcs.emplace_back(slot.ctors[i], ctors[i].second);
  }
  return spec;
}

Slot new_slot(PrCtx& pc, const std::string& px) {
  Slot s;
  for (const auto& [c, k] : pc.sig.constructors())
    s.ctors.push_back(pc.ctx.fn(c + "_" + px, k));
  s.root.clear();
  return s;
}

// Copies the sub-dag of `src` reachable from `src_root_addr` into `dst`,
// hash-consing against dst's existing content, and returns the name of a
// fresh token denoting the copied root. Src is left intact (enumeration
// shadows are restored). The per-site translation pointer is kept across
// executions of the same site: both slots only grow, so old translations
// stay valid and serve as a cache.
std::string emit_copy_span(PrCtx& pc, Stmts& out, const Slot& src,
                           const std::string& src_root_addr, const Slot& dst) {
  Ctx& ctx = pc.ctx;
  std::string px = pc.tag();
  std::string cp = ctx.fn(px + "cp", 1);
  std::string mark = ctx.rel(px + "M", 1);
  std::string rev = ctx.fn(px + "rv", 1);
  std::string prev = ctx.fn(px + "pv", 0);
  std::string tail = ctx.fn(px + "tl", 0);
  std::string fresh = ctx.fn(px + "nw", 0);
  std::string dst_root = ctx.fn(px + "dr", 0);

  // enumerate src with inverses; reset leftover artifacts first
  Stmts enum_body;
  EnumNames en =
      emit_enumerator(ctx, enum_body, slot_spec(pc, src, true, px));
  Stmts reset = enum_reset(ctx, en);
  out.insert(out.end(), reset.begin(), reset.end());
  out.insert(out.end(), enum_body.begin(), enum_body.end());

  // reverse chain (children come after parents when walked from the tail)
  std::string rcopy = ctx.fn(px + "rce", 1);
  Stmts mk = chain_dup(ctx, en.head, en.chain, {rcopy}, px + "rc");
  out.insert(out.end(), mk.begin(), mk.end());
  out.push_back("drop " + prev);
  std::string rcur = ctx.fn(px + "rcur", 0);
  Stmts revwalk = scan_consume(
      ctx, en.head, rcopy, rcur,
      {if_else("def " + prev, {rev + "(" + rcur + ") <- " + prev}, {}),
       prev + " := " + rcur, tail + " := " + rcur});
  out.insert(out.end(), revwalk.begin(), revwalk.end());
  out.push_back("drop " + prev);

  // mark the span of the root, walking parents before children
  out.push_back(mark + "+(" + src_root_addr + ")");
  std::string mcur = ctx.fn(px + "mc", 0);
  Stmts mark_body;
  const auto& ctors = pc.sig.constructors();
  for (size_t i = 0; i < ctors.size(); ++i) {
    uint32_t k = ctors[i].second;
    if (k == 0) continue;
    const std::string& c = src.ctors[i];
    Stmts kids;
    for (uint32_t j = 0; j < k; ++j)
      kids.push_back(mark + "+(" + en.inverses.at(c)[j] + "(" + mcur + "))");
    mark_body.push_back(if_else("def " + en.inverses.at(c)[0] + "(" + mcur +
                                    ") and " + mark + "(" + mcur + ")",
                                kids, {}));
  }
  Stmts markwalk = scan_consume(ctx, tail, rev, mcur, mark_body);
  out.insert(out.end(), markwalk.begin(), markwalk.end());
  out.push_back("drop " + tail);

  // copy pass: children first along the enumeration; cached translations
  // short-circuit, and hash-consing against dst shares sub-terms
  std::string ccopy = ctx.fn(px + "cce", 1);
  Stmts ck = chain_dup(ctx, en.head, en.chain, {ccopy}, px + "cc");
  out.insert(out.end(), ck.begin(), ck.end());
  std::string ccur = ctx.fn(px + "cw", 0);
  Stmts copy_body;
  for (size_t i = 0; i < ctors.size(); ++i) {
    uint32_t k = ctors[i].second;
    const std::string& c = src.ctors[i];
    const std::string& cd = dst.ctors[i];
    if (k == 0) {
      copy_body.push_back(if_else(
          mark + "(" + ccur + ") and " + ccur + " == " + c + " and not def " +
              cp + "(" + ccur + ")",
          {if_else("def " + cd, {}, {"new " + cd}),
           cp + "(" + ccur + ") <- " + cd},
          {}));
    } else {
      std::vector<std::string> trans;
      for (uint32_t j = 0; j < k; ++j)
        trans.push_back(cp + "(" + en.inverses.at(c)[j] + "(" + ccur + "))");
      std::string image = app(cd, trans);
      copy_body.push_back(if_else(
          mark + "(" + ccur + ") and def " + en.inverses.at(c)[0] + "(" +
              ccur + ") and not def " + cp + "(" + ccur + ")",
          {if_else("def " + image, {},
                   {"new " + fresh, image + " <- " + fresh, "drop " + fresh}),
           cp + "(" + ccur + ") <- " + image},
          {}));
    }
  }
  copy_body.push_back(mark + "-(" + ccur + ")");
  Stmts copywalk = scan_consume(ctx, en.head, ccopy, ccur, copy_body);
  out.insert(out.end(), copywalk.begin(), copywalk.end());

  out.push_back(dst_root + " := " + cp + "(" + src_root_addr + ")");
  return dst_root;
}

Slot emit_def(PrCtx& pc, Stmts& out, const PRDefinition& def,
              const std::vector<Slot>& in);

Slot emit_recurrence(PrCtx& pc, Stmts& out, const PRDefinition& def,
                     const std::vector<Slot>& in) {
  Ctx& ctx = pc.ctx;
  std::string px = pc.tag();
  const Slot& arg = in[0];
  Slot result = new_slot(pc, px + "w");

  std::string r = ctx.fn(px + "r", 1);
  std::string out_tok = ctx.fn(px + "o", 0);

  // enumerate the recurrence argument's slot, monotone and with inverses
  Stmts enum_body;
  EnumNames en =
      emit_enumerator(ctx, enum_body, slot_spec(pc, arg, true, px));
  Stmts reset = enum_reset(ctx, en, [&](const std::string& x) {
    return Stmts{"drop " + r + "(" + x + ")"};
  });
  out.insert(out.end(), reset.begin(), reset.end());
  out.insert(out.end(), enum_body.begin(), enum_body.end());

  // the main loop consumes a copy of the enumerator chain as its variant;
  // the chain itself stays available for materializing sub-structures
  std::string walk = ctx.fn(px + "we", 1);
  Stmts wk = chain_dup(ctx, en.head, en.chain, {walk}, px + "wk");
  out.insert(out.end(), wk.begin(), wk.end());

  std::string cur = ctx.fn(px + "nu", 0);
  const auto& ctors = pc.sig.constructors();

  // per-node dispatch on the unique constructor, nullary cases by token
  // equality, the rest by definedness of the first inverse
  std::string dispatch;
  bool have = false;
  for (size_t ci = ctors.size(); ci-- > 0;) {
    const auto& [cname, k] = ctors[ci];
    const std::string& c = arg.ctors[ci];
    const PRDefPtr& step = def.steps[ci].second;

    Stmts arm;
    std::vector<Slot> sub;            // x.., z.., y..
    for (size_t i = 1; i < in.size(); ++i) sub.push_back(in[i]);
    std::vector<std::string> temps;
    for (uint32_t j = 0; j < k; ++j) {
      std::string zt = ctx.fn(px + "z", 0);
      arm.push_back(zt + " := " + en.inverses.at(c)[j] + "(" + cur + ")");
      sub.push_back(Slot{arg.ctors, zt});
      temps.push_back(zt);
    }
    for (uint32_t j = 0; j < k; ++j) {
      std::string yt = ctx.fn(px + "y", 0);
      arm.push_back(yt + " := " + r + "(" + temps[j] + ")");
      sub.push_back(Slot{result.ctors, yt});
      temps.push_back(yt);
    }
    Slot stepres = emit_def(pc, arm, *step, sub);
    std::string res = emit_copy_span(pc, arm, stepres, stepres.root, result);
    arm.push_back(r + "(" + cur + ") <- " + res);
    arm.push_back("drop " + res);
    for (const auto& t : temps) arm.push_back("drop " + t);

    std::string test = k == 0 ? cur + " == " + c
                              : "def " + en.inverses.at(c)[0] + "(" + cur + ")";
    dispatch = have ? if_else(test, arm, {dispatch})
                    : if_else(test, arm, {});
    have = true;
  }

  Stmts loop = scan_consume(ctx, en.head, walk, cur, {dispatch});
  out.insert(out.end(), loop.begin(), loop.end());

  out.push_back(out_tok + " := " + r + "(" + arg.root + ")");
  return Slot{result.ctors, out_tok};
}

Slot emit_def(PrCtx& pc, Stmts& out, const PRDefinition& def,
              const std::vector<Slot>& in) {
  if (in.size() != def.arity)
    throw Error("compiled definition applied to the wrong argument count");
  switch (def.kind) {
    case PRDefinition::Kind::Projection:
      return in[def.proj_index - 1];
    case PRDefinition::Kind::Composition: {
      std::vector<Slot> mids;
      for (const auto& h : def.comp_hs)
        mids.push_back(emit_def(pc, out, *h, in));
      return emit_def(pc, out, *def.comp_g, mids);
    }
    case PRDefinition::Kind::Constructor: {
      Ctx& ctx = pc.ctx;
      std::string px = pc.tag();
      Slot result = new_slot(pc, px + "k");
      size_t ci = 0;
      while (pc.sig.constructors()[ci].first != def.ctor) ++ci;
      const std::string& cd = result.ctors[ci];
      std::string out_tok = ctx.fn(px + "o", 0);
      if (def.arity == 0) {
        out.push_back(if_else("def " + cd, {}, {"new " + cd}));
        out.push_back(out_tok + " := " + cd);
        return Slot{result.ctors, out_tok};
      }
      std::vector<std::string> roots;
      for (uint32_t j = 0; j < def.arity; ++j)
        roots.push_back(emit_copy_span(pc, out, in[j], in[j].root, result));
      std::string image = app(cd, roots);
      std::string fresh = ctx.fn(px + "nw", 0);
      out.push_back(if_else(
          "def " + image, {},
          {"new " + fresh, image + " <- " + fresh, "drop " + fresh}));
      out.push_back(out_tok + " := " + image);
      for (const auto& t : roots) out.push_back("drop " + t);
      return Slot{result.ctors, out_tok};
    }
    case PRDefinition::Kind::Recurrence:
      return emit_recurrence(pc, out, def, in);
  }
  throw Error("malformed definition");
}

} // namespace

std::unordered_map<std::string, std::string> CompiledPR::output_to_input()
    const {
  std::unordered_map<std::string, std::string> m;
  for (const auto& [orig, emitted] : output_constructors) m[emitted] = orig;
  m[output_root] = kRootToken;
  return m;
}

CompiledPR compile_pr(const FreeAlgebraSignature& sig,
                      const PRDefinition& def) {
  Ctx ctx;
  CompiledPR result;

  // argument slots: the recurrence argument over the declared names, later
  // arguments over per-position renamings
  std::vector<Slot> slots;
  for (uint32_t i = 0; i < def.arity; ++i) {
    std::string suffix = i == 0 ? "" : "_x" + std::to_string(i);
    Vocabulary v;
    Slot s;
    std::unordered_map<std::string, std::string> renames;
    for (const auto& [c, k] : sig.constructors()) {
      v.add(c + suffix, IdKind::Function, k);
      s.ctors.push_back(c + suffix);
      if (i > 0) renames[c] = c + suffix;
    }
    std::string root = kRootToken + suffix;
    v.add(root, IdKind::Function, 0);
    if (i > 0) renames[kRootToken] = root;
    s.root = root;
    ctx.use(v);
    slots.push_back(std::move(s));
    result.input_roots.push_back(root);
    result.input_renames.push_back(std::move(renames));
  }

  PrCtx pc{ctx, sig, 0};
  Stmts out;
  Slot res = emit_def(pc, out, def, slots);

  // extraction: copy the result span into the output names so that the
  // output reduct is exactly the term structure of the value
  Slot output;
  for (const auto& [c, k] : sig.constructors()) {
    std::string name = ctx.fn(c + "_out", k);
    output.ctors.push_back(name);
    result.output_constructors[c] = name;
  }
  std::string out_root = emit_copy_span(pc, out, res, res.root, output);
  result.output_root = out_root;
  result.output_names = output.ctors;
  result.output_names.push_back(out_root);

  result.unit = ctx.parse(out);
  return result;
}

PartialStructure make_pr_input(const FreeAlgebraSignature& sig,
                               const CompiledPR& compiled,
                               const std::vector<Term>& args) {
  if (args.size() != compiled.input_roots.size())
    throw Error("wrong number of arguments for compiled program");
  if (args.empty()) // nullary definition: a bare one-node structure
    return PartialStructure(std::make_shared<Vocabulary>(), 1);
  std::vector<PartialStructure> parts;
  for (size_t i = 0; i < args.size(); ++i) {
    PartialStructure t = term_structure(args[i], *sig.vocab());
    parts.push_back(t.rename(compiled.input_renames[i]));
  }
  return oplus(parts);
}

PartialStructure run_compiled_pr(const CompiledPR& compiled,
                                 const FreeAlgebraSignature& sig,
                                 const std::vector<Term>& args,
                                 std::optional<uint64_t> fuel) {
  PartialStructure input = make_pr_input(sig, compiled, args);
  RunOptions opts;
  opts.fuel = fuel;
  PartialStructure out =
      run_transducer(compiled.unit, input, compiled.output_names, opts);
  return out.rename(compiled.output_to_input());
}

ProgramUnit bound_transform(const ProgramUnit& p, const PRDefinition& f_def,
                            const FreeAlgebraSignature& nat_sig) {
  if (f_def.arity != 1)
    throw Error("the budget definition must be unary");
  if (nat_sig.constructors().size() != 2 ||
      nat_sig.constructors()[0].second != 0 ||
      nat_sig.constructors()[1].second != 1)
    throw Error("the budget algebra must be {nullary, unary}");

  Ctx ctx;
  ctx.use(*p.vocab); // identifier indices of p stay valid in the new vocab

  // count the loops of p; each gets its own budget chain
  std::vector<const Program*> loops;
  walk(p.body, [&](const Program& q) {
    if (q.kind == Program::Kind::DoST || q.kind == Program::Kind::DoSTV)
      loops.push_back(&q);
  });

  Stmts out;

  // phase 1: enumerator over p's vocabulary; the chain length is the
  // accessible node count of the input
  EnumSpec spec;
  for (const auto& e : p.vocab->entries()) {
    if (e.kind != IdKind::Function) continue;
    if (e.arity == 0)
      spec.tokens.push_back(e.name);
    else
      spec.funcs.emplace_back(e.name, e.arity);
  }
  spec.prefix = "n_";
  EnumNames en = emit_enumerator(ctx, out, spec);

  // phase 2: materialize the count as a numeral chain and compute the
  // budget value T(f(n)) with the compiled definition
  std::string zin = ctx.fn("nz", 0);
  std::string sin = ctx.fn("ns", 1);
  std::string nroot = ctx.fn("nr", 0);
  std::string grow = ctx.fn("ng", 0);
  out.push_back("new " + zin);
  out.push_back(nroot + " := " + zin);
  std::string ncopy = ctx.fn("nce", 1);
  Stmts cp = chain_dup(ctx, en.head, en.chain, {ncopy}, "ncp");
  std::string ncur = ctx.fn("ncu", 0);
  Stmts count = scan_consume(ctx, en.head, ncopy, ncur,
                             {"new " + grow, sin + "(" + nroot + ") <- " + grow,
                              nroot + " := " + grow, "drop " + grow});
  Stmts counting = concat({cp, count});
  out.push_back(if_else("def " + en.head, counting, {}));

  PrCtx pc{ctx, nat_sig, 0};
  Slot nat_in{{zin, sin}, nroot};
  Slot budget = emit_def(pc, out, f_def, {nat_in});

  // phase 3: one copy of the budget chain per loop. The chain runs along
  // the slot's unary constructor from its leaf token.
  const std::string& leaf = budget.ctors[0];
  const std::string& succ = budget.ctors[1];
  std::vector<std::string> chains, cursors, scratches;
  for (size_t i = 0; i < loops.size(); ++i) {
    chains.push_back(ctx.fn("bt", 1));
    cursors.push_back(ctx.fn("by", 0));
    scratches.push_back(ctx.fn("bu", 0));
  }
  if (!loops.empty()) {
    Stmts dup = chain_dup(ctx, leaf, succ, chains, "bd");
    for (size_t i = 0; i < loops.size(); ++i)
      dup.push_back(cursors[i] + " := " + leaf);
    out.push_back(if_else("def " + leaf, dup, {}));
  }

  ProgramUnit phases = ctx.parse(out);

  // phase 4: p with every loop carrying its budget copy as variant and its
  // body preceded by one contraction of that copy
  std::unordered_map<const Program*, size_t> loop_ix;
  for (size_t i = 0; i < loops.size(); ++i) loop_ix[loops[i]] = i;

  const Vocabulary& v = *phases.vocab;
  std::function<Program(const Program&)> rewrite =
      [&](const Program& q) -> Program {
    Program n = q;
    for (size_t i = 0; i < q.kids.size(); ++i) n.kids[i] = rewrite(q.kids[i]);
    if (q.kind != Program::Kind::DoST && q.kind != Program::Kind::DoSTV)
      return n;
    size_t ix = loop_ix.at(&q);
    IdIndex chain = v.require(chains[ix]);
    IdIndex cursor = v.require(cursors[ix]);
    IdIndex scratch = v.require(scratches[ix]);
    Term edge(chain, {Term(cursor)});
    Program consume = build::if_(
        build::g(build::t_def(edge)),
        build::seq({
            build::rev(build::r_ext(scratch, {}, edge)),
            build::rev(build::r_contr(chain, {Term(cursor)})),
            build::rev(build::r_contr(cursor, {})),
            build::rev(build::r_ext(cursor, {}, Term(scratch))),
            build::rev(build::r_contr(scratch, {})),
        }),
        build::seq({}));
    Program body = build::seq({std::move(consume), std::move(n.kids[0])});
    return build::do_stv(n.guard, {chain}, std::move(body));
  };
  Program budgeted = rewrite(p.body);

  ProgramUnit final_unit;
  final_unit.vocab = phases.vocab;
  final_unit.body = build::seq({std::move(phases.body), std::move(budgeted)});
  return final_unit;
}

} // namespace stv
