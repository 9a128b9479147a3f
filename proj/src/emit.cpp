#include "emit.hpp"

#include <unordered_set>

#include "stv/parser.hpp"

namespace stv::emit {

namespace {

const std::unordered_set<std::string> kKeywords = {
    "vocab", "fn", "rel", "if", "do", "def",
    "not",   "and", "or", "drop", "new", "del",
};

} // namespace

std::string join(const Stmts& body) {
  std::string out;
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) out += ";\n";
    out += body[i];
  }
  return out;
}

std::string block(const Stmts& body) {
  if (body.empty()) return "{}";
  return "{\n" + join(body) + "\n}";
}

Stmts concat(std::initializer_list<Stmts> parts) {
  Stmts out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::string app(const std::string& f, const std::vector<std::string>& args) {
  if (args.empty()) return f;
  std::string s = f + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i];
  }
  return s + ")";
}

std::string if_else(const std::string& guard, const Stmts& then_branch,
                    const Stmts& else_branch) {
  return "if [" + guard + "] " + block(then_branch) + " " +
         block(else_branch);
}

std::string do_st(const std::string& guard, const Stmts& body) {
  return "do [" + guard + "] " + block(body);
}

std::string do_stv(const std::string& guard,
                   const std::vector<std::string>& variant,
                   const Stmts& body) {
  std::string v;
  for (size_t i = 0; i < variant.size(); ++i) {
    if (i) v += ", ";
    v += variant[i];
  }
  return "do [" + guard + "] [" + v + "] " + block(body);
}

void Ctx::use(const Vocabulary& vocab) {
  for (const auto& e : vocab.entries()) {
    if (kKeywords.count(e.name))
      throw Error("identifier '" + e.name +
                  "' collides with a program keyword");
    vocab_.add(e.name, e.kind, e.arity);
    decls_ += (e.kind == IdKind::Function ? " fn " : " rel ") + e.name + "/" +
              std::to_string(e.arity);
  }
}

std::string Ctx::fn(const std::string& hint, uint32_t arity) {
  std::string name = vocab_.free_name(hint);
  vocab_.add(name, IdKind::Function, arity);
  decls_ += " fn " + name + "/" + std::to_string(arity);
  return name;
}

std::string Ctx::rel(const std::string& hint, uint32_t arity) {
  std::string name = vocab_.free_name(hint);
  vocab_.add(name, IdKind::Relation, arity);
  decls_ += " rel " + name + "/" + std::to_string(arity);
  return name;
}

std::string Ctx::header() const { return "vocab {" + decls_ + " }\n"; }

ProgramUnit Ctx::parse(const Stmts& body) const {
  return parse_program_unit(header() + join(body) + "\n");
}

Stmts scan_consume(Ctx& ctx, const std::string& head_addr,
                   const std::string& chain, const std::string& cursor,
                   const Stmts& body_per_node) {
  std::string nxt = ctx.fn(cursor + "n", 0);
  Stmts body = body_per_node;
  body.push_back(if_else(
      "def " + chain + "(" + cursor + ")",
      {nxt + " <- " + chain + "(" + cursor + ")",
       "drop " + chain + "(" + cursor + ")", cursor + " := " + nxt,
       "drop " + nxt},
      {"drop " + cursor}));
  return {cursor + " := " + head_addr,
          do_stv("def " + cursor, {chain}, body)};
}

Stmts chain_copy_consume(Ctx& ctx, const std::string& root_addr,
                         const std::string& chain,
                         const std::vector<std::string>& copies,
                         const std::string& prefix) {
  std::string cur = ctx.fn(prefix + "c", 0);
  std::string nxt = ctx.fn(prefix + "cn", 0);
  Stmts body;
  body.push_back(nxt + " <- " + chain + "(" + cur + ")");
  for (const auto& c : copies) body.push_back(c + "(" + cur + ") <- " + nxt);
  body.push_back("drop " + chain + "(" + cur + ")");
  body.push_back(cur + " := " + nxt);
  body.push_back("drop " + nxt);
  return {cur + " := " + root_addr,
          do_stv("def " + chain + "(" + cur + ")", {chain}, body),
          "drop " + cur};
}

Stmts chain_dup(Ctx& ctx, const std::string& root_addr,
                const std::string& chain,
                const std::vector<std::string>& copies,
                const std::string& prefix) {
  std::string keeper = ctx.fn(prefix + "k", 1);
  std::vector<std::string> all = copies;
  all.push_back(keeper);
  Stmts out = chain_copy_consume(ctx, root_addr, chain, all, prefix);
  // restore the original from the scratch copy
  std::string cur = ctx.fn(prefix + "r", 0);
  std::string nxt = ctx.fn(prefix + "rn", 0);
  out.push_back(cur + " := " + root_addr);
  out.push_back(do_stv("def " + keeper + "(" + cur + ")", {keeper},
                       {nxt + " <- " + keeper + "(" + cur + ")",
                        chain + "(" + cur + ") <- " + nxt,
                        "drop " + keeper + "(" + cur + ")",
                        cur + " := " + nxt, "drop " + nxt}));
  out.push_back("drop " + cur);
  return out;
}

namespace {

Stmts scan_tuples_level(Ctx& ctx, const std::string& head_tok,
                        const std::string& chain, uint32_t level, uint32_t k,
                        std::vector<std::string>& cursors,
                        const std::function<Stmts(
                            const std::vector<std::string>&)>& body_per_tuple,
                        const std::string& prefix) {
  if (level == k) return body_per_tuple(cursors);
  std::string tag = prefix + "l" + std::to_string(level + 1);
  std::string copy = ctx.fn(tag + "e", 1);
  std::string cursor = ctx.fn(tag + "t", 0);
  cursors.push_back(cursor);
  Stmts inner = scan_tuples_level(ctx, head_tok, chain, level + 1, k, cursors,
                                  body_per_tuple, prefix);
  cursors.pop_back();
  Stmts out = chain_dup(ctx, head_tok, chain, {copy}, tag);
  Stmts walk = scan_consume(ctx, head_tok, copy, cursor, inner);
  out.insert(out.end(), walk.begin(), walk.end());
  return out;
}

} // namespace

Stmts scan_tuples(Ctx& ctx, const std::string& head_tok,
                  const std::string& chain, uint32_t k,
                  const std::function<Stmts(const std::vector<std::string>&)>&
                      body_per_tuple,
                  const std::string& prefix) {
  std::vector<std::string> cursors;
  Stmts scans = scan_tuples_level(ctx, head_tok, chain, 0, k, cursors,
                                  body_per_tuple, prefix);
  // nothing is enumerated when the head is undefined
  return {if_else("def " + head_tok, scans, {})};
}

EnumNames emit_enumerator(Ctx& ctx, Stmts& out, const EnumSpec& spec) {
  EnumNames n;
  const std::string& px = spec.prefix;
  n.head = ctx.fn(px + "a", 0);
  n.chain = ctx.fn(px + "e", 1);
  n.set = ctx.rel(px + "E", 1);
  n.buf_root = ctx.fn(px + "b", 0);
  n.buf_chain = ctx.fn(px + "d", 1);
  n.flag = ctx.fn(px + "f", 0);
  n.tail = ctx.fn(px + "last", 0);
  n.buf_tail = ctx.fn(px + "dt", 0);
  for (const auto& [f, k] : spec.funcs) {
    n.shadows[f] = ctx.fn(px + f + "_used", k);
    if (spec.with_inverses) {
      for (uint32_t i = 1; i <= k; ++i)
        n.inverses[f].push_back(ctx.fn(f + "_inv" + std::to_string(i), 1));
    }
  }

  // Seeding: the head is the first defined token; remaining token values
  // are chained behind it, deduplicated through the set.
  for (const auto& t : spec.tokens) out.push_back(n.head + " <- " + t);
  Stmts seed;
  seed.push_back(n.set + "+(" + n.head + ")");
  seed.push_back(n.tail + " <- " + n.head);
  seed.push_back(n.flag + " <- " + n.head);
  for (const auto& t : spec.tokens) {
    seed.push_back(if_else(
        "def " + t + " and not " + n.set + "(" + t + ")",
        {n.chain + "(" + n.tail + ") <- " + t, n.tail + " := " + t,
         n.set + "+(" + t + ")"},
        {}));
  }
  out.push_back(if_else("def " + n.head, seed, {}));

  if (spec.funcs.empty()) return n;

  // One round per address height: scan all tuples of enumerated nodes
  // under every function, buffer the new values, then append the buffer to
  // the chain. Every discovery consumes its defining entry (the round
  // loop's variant); shadows allow restoring them afterwards.
  Stmts round;
  round.push_back("drop " + n.flag);
  for (const auto& [f, k] : spec.funcs) {
    std::string val = ctx.fn(px + "v", 0);
    auto body = [&, f = f, k = k](const std::vector<std::string>& cs) {
      std::string fc = app(f, cs);
      Stmts discover;
      discover.push_back(val + " <- " + fc);
      if (spec.with_inverses) {
        for (uint32_t i = 0; i < k; ++i)
          discover.push_back(n.inverses[f][i] + "(" + val + ") <- " + cs[i]);
      }
      discover.push_back(if_else("def " + n.buf_tail,
                                 {n.buf_chain + "(" + n.buf_tail + ") <- " + val},
                                 {n.buf_root + " <- " + val}));
      discover.push_back(n.buf_tail + " := " + val);
      discover.push_back(n.set + "+(" + val + ")");
      discover.push_back(n.flag + " <- " + val);
      discover.push_back(app(n.shadows[f], cs) + " <- " + val);
      discover.push_back("drop " + fc);
      discover.push_back("drop " + val);
      Stmts fill;
      if (spec.with_inverses) {
        Stmts set_inv;
        for (uint32_t i = 0; i < k; ++i)
          set_inv.push_back(n.inverses[f][i] + "(" + fc + ") <- " + cs[i]);
        fill.push_back(if_else(
            "def " + fc + " and not def " + n.inverses[f][0] + "(" + fc + ")",
            set_inv, {}));
      }
      return Stmts{if_else("def " + fc + " and not " + n.set + "(" + fc + ")",
                           discover, fill)};
    };
    Stmts scans =
        scan_tuples(ctx, n.head, n.chain, k, body, px + f + "_");
    round.insert(round.end(), scans.begin(), scans.end());
  }
  // splice the buffer onto the chain tail
  std::string w = ctx.fn(px + "w", 0);
  round.push_back(if_else(
      "def " + n.buf_root,
      {n.chain + "(" + n.tail + ") <- " + n.buf_root,
       n.tail + " := " + n.buf_root,
       do_stv("def " + n.buf_chain + "(" + n.tail + ")", {n.buf_chain},
              {w + " <- " + n.buf_chain + "(" + n.tail + ")",
               "drop " + n.buf_chain + "(" + n.tail + ")",
               n.chain + "(" + n.tail + ") <- " + w, n.tail + " := " + w,
               "drop " + w}),
       "drop " + n.buf_root, "drop " + n.buf_tail},
      {}));

  std::vector<std::string> variant;
  for (const auto& [f, k] : spec.funcs) variant.push_back(f);
  out.push_back(do_stv("def " + n.flag, variant, round));

  if (spec.restore_scanned) {
    for (const auto& [f, k] : spec.funcs) {
      auto restore = [&, f = f](const std::vector<std::string>& cs) {
        std::string sh = app(n.shadows.at(f), cs);
        return Stmts{if_else("def " + sh,
                             {app(f, cs) + " <- " + sh, "drop " + sh}, {})};
      };
      Stmts scans = scan_tuples(ctx, n.head, n.chain, k, restore,
                                px + f + "_rs_");
      out.insert(out.end(), scans.begin(), scans.end());
    }
  }
  return n;
}

Stmts enum_reset(
    Ctx& ctx, const EnumNames& n,
    const std::function<Stmts(const std::string&)>& extra_per_node) {
  std::string cur = ctx.fn(n.head + "_z", 0);
  Stmts per_node;
  per_node.push_back(n.set + "-(" + cur + ")");
  for (const auto& [f, invs] : n.inverses)
    for (const auto& inv : invs) per_node.push_back("drop " + inv + "(" + cur + ")");
  if (extra_per_node) {
    Stmts extra = extra_per_node(cur);
    per_node.insert(per_node.end(), extra.begin(), extra.end());
  }
  Stmts out = scan_consume(ctx, n.head, n.chain, cur, per_node);
  out.push_back("drop " + n.head);
  out.push_back("drop " + n.buf_root);
  out.push_back("drop " + n.flag);
  out.push_back("drop " + n.tail);
  out.push_back("drop " + n.buf_tail);
  return out;
}

} // namespace stv::emit
