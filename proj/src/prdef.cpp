#include "stv/prdef.hpp"

#include <unordered_map>

#include <functional>

#include "lex.hpp"

namespace stv {

FreeAlgebraSignature::FreeAlgebraSignature(
    std::vector<std::pair<std::string, uint32_t>> constructors)
    : ctors_(std::move(constructors)) {
  if (ctors_.empty()) throw Error("algebra needs at least one constructor");
  bool has_nullary = false;
  auto v = std::make_shared<Vocabulary>();
  for (const auto& [name, arity] : ctors_) {
    v->add(name, IdKind::Function, arity);
    if (arity == 0) has_nullary = true;
  }
  if (!has_nullary)
    throw Error("algebra needs a nullary constructor to be non-empty");
  vocab_ = std::move(v);
}

uint32_t FreeAlgebraSignature::arity_of(const std::string& name) const {
  for (const auto& [n, a] : ctors_)
    if (n == name) return a;
  throw Error("unknown constructor '" + name + "'");
}

bool FreeAlgebraSignature::is_constructor(const std::string& name) const {
  for (const auto& [n, a] : ctors_)
    if (n == name) return true;
  return false;
}

namespace prbuild {

PRDefPtr ctor(const FreeAlgebraSignature& sig, const std::string& c) {
  auto d = std::make_shared<PRDefinition>();
  d->kind = PRDefinition::Kind::Constructor;
  d->ctor = c;
  d->arity = sig.arity_of(c);
  return d;
}

PRDefPtr proj(uint32_t index, uint32_t of_arity) {
  if (index == 0 || index > of_arity)
    throw Error("projection index out of range");
  auto d = std::make_shared<PRDefinition>();
  d->kind = PRDefinition::Kind::Projection;
  d->proj_index = index;
  d->arity = of_arity;
  return d;
}

PRDefPtr comp(PRDefPtr g, std::vector<PRDefPtr> hs, uint32_t arity) {
  if (!g) throw Error("composition without an outer function");
  if (g->arity != hs.size())
    throw Error("composition arity mismatch: outer expects " +
                std::to_string(g->arity) + ", got " +
                std::to_string(hs.size()));
  for (const auto& h : hs)
    if (h->arity != arity)
      throw Error("composition arity mismatch in inner function");
  auto d = std::make_shared<PRDefinition>();
  d->kind = PRDefinition::Kind::Composition;
  d->comp_g = std::move(g);
  d->comp_hs = std::move(hs);
  d->arity = arity;
  return d;
}

PRDefPtr rec(const FreeAlgebraSignature& sig,
             std::vector<std::pair<std::string, PRDefPtr>> steps, uint32_t m) {
  auto d = std::make_shared<PRDefinition>();
  d->kind = PRDefinition::Kind::Recurrence;
  d->arity = 1 + m;
  // order the steps by signature order and check coverage
  for (const auto& [c, k] : sig.constructors()) {
    const PRDefPtr* found = nullptr;
    for (const auto& [name, step] : steps)
      if (name == c) {
        if (found) throw Error("duplicate recurrence step for '" + c + "'");
        found = &step;
      }
    if (!found) throw Error("missing recurrence step for '" + c + "'");
    if ((*found)->arity != m + 2 * k)
      throw Error("recurrence step for '" + c + "' must take " +
                  std::to_string(m + 2 * k) + " arguments");
    d->steps.emplace_back(c, *found);
  }
  if (d->steps.size() != steps.size())
    throw Error("recurrence step for an unknown constructor");
  return d;
}

} // namespace prbuild

Term eval_pr(const FreeAlgebraSignature& sig, const PRDefinition& def,
             const std::vector<Term>& args) {
  if (args.size() != def.arity)
    throw Error("definition applied to " + std::to_string(args.size()) +
                " arguments, expects " + std::to_string(def.arity));
  switch (def.kind) {
    case PRDefinition::Kind::Constructor:
      return Term(sig.vocab()->require(def.ctor), args);
    case PRDefinition::Kind::Projection:
      return args[def.proj_index - 1];
    case PRDefinition::Kind::Composition: {
      std::vector<Term> inner;
      inner.reserve(def.comp_hs.size());
      for (const auto& h : def.comp_hs) inner.push_back(eval_pr(sig, *h, args));
      return eval_pr(sig, *def.comp_g, inner);
    }
    case PRDefinition::Kind::Recurrence: {
      const Term& w = args[0];
      const std::string& c = sig.vocab()->name(w.head);
      for (const auto& [name, step] : def.steps) {
        if (name != c) continue;
        std::vector<Term> sargs(args.begin() + 1, args.end()); // x..
        for (const auto& z : w.args) sargs.push_back(z);       // z..
        for (const auto& z : w.args) {                         // y..
          std::vector<Term> rec_args;
          rec_args.push_back(z);
          rec_args.insert(rec_args.end(), args.begin() + 1, args.end());
          sargs.push_back(eval_pr(sig, def, rec_args));
        }
        return eval_pr(sig, *step, sargs);
      }
      throw Error("no recurrence step for constructor '" + c + "'");
    }
  }
  throw Error("malformed definition");
}

namespace {

using lex::Lexer;
using lex::Tok;
using lex::Token;

class PRParser {
public:
  explicit PRParser(const std::string& text) : lx_(text) {}

  PRFile run() {
    if (!lx_.accept_word("algebra"))
      lx_.fail(lx_.peek(), "expected 'algebra { ... }'");
    lx_.expect(Tok::LBrace, "'{'");
    std::vector<std::pair<std::string, uint32_t>> ctors;
    while (!lx_.accept(Tok::RBrace)) {
      Token nm = lx_.expect_any_word("constructor name");
      lx_.expect(Tok::Slash, "'/' before arity");
      uint64_t ar = lex::to_natural(lx_.expect_any_word("arity"));
      ctors.emplace_back(nm.text, static_cast<uint32_t>(ar));
    }
    PRFile file{FreeAlgebraSignature(std::move(ctors)), {}};
    while (!lx_.at_end()) {
      if (!lx_.accept_word("def"))
        lx_.fail(lx_.peek(), "expected 'def <name>/<arity> = ...'");
      Token nm = lx_.expect_any_word("definition name");
      lx_.expect(Tok::Slash, "'/' before arity");
      uint64_t ar = lex::to_natural(lx_.expect_any_word("arity"));
      lx_.expect(Tok::Equal, "'='");
      PRDefPtr def = parse_rhs(file, static_cast<uint32_t>(ar));
      if (file.find(nm.text) || file.sig.is_constructor(nm.text))
        lx_.fail(nm, "'" + nm.text + "' is already defined");
      file.defs.emplace_back(nm.text, std::move(def));
    }
    return file;
  }

private:
  Lexer lx_;

  PRDefPtr parse_rhs(const PRFile& file, uint32_t arity) {
    if (lx_.accept_word("rec")) return parse_rec(file, arity);
    return parse_ref(file, arity);
  }

  // reference: comp(...), projection pN, a definition name, or a
  // constructor used as a function
  PRDefPtr parse_ref(const PRFile& file, uint32_t arity) {
    Token nm = lx_.expect_any_word("function reference");
    if (nm.text == "comp") {
      lx_.expect(Tok::LParen, "'('");
      // the outer function's own arity is the number of inner functions
      PRDefPtr g = parse_named(file, nm);
      std::vector<PRDefPtr> hs;
      if (lx_.accept(Tok::Semi)) {
        for (;;) {
          hs.push_back(parse_ref(file, arity));
          if (!lx_.accept(Tok::Comma)) break;
        }
      }
      lx_.expect(Tok::RParen, "')'");
      return prbuild::comp(std::move(g), std::move(hs), arity);
    }
    return resolve(file, nm, arity);
  }

  PRDefPtr parse_named(const PRFile& file, const Token&) {
    Token nm = lx_.expect_any_word("function name");
    if (nm.text == "comp") lx_.fail(nm, "nested comp must be a named def");
    // arity resolved from the definition itself
    if (PRDefPtr d = file.find(nm.text)) return d;
    if (file.sig.is_constructor(nm.text))
      return prbuild::ctor(file.sig, nm.text);
    lx_.fail(nm, "unknown function '" + nm.text + "'");
  }

  PRDefPtr resolve(const PRFile& file, const Token& nm, uint32_t arity) {
    if (nm.text.size() >= 2 && nm.text[0] == 'p' &&
        lex::is_natural(nm.text.substr(1))) {
      uint32_t idx = static_cast<uint32_t>(std::stoul(nm.text.substr(1)));
      return prbuild::proj(idx, arity);
    }
    if (PRDefPtr d = file.find(nm.text)) {
      if (d->arity != arity)
        lx_.fail(nm, "'" + nm.text + "' has arity " + std::to_string(d->arity));
      return d;
    }
    if (file.sig.is_constructor(nm.text)) {
      PRDefPtr d = prbuild::ctor(file.sig, nm.text);
      if (d->arity != arity)
        lx_.fail(nm, "constructor arity mismatch for '" + nm.text + "'");
      return d;
    }
    lx_.fail(nm, "unknown function '" + nm.text + "'");
  }

  PRDefPtr parse_rec(const PRFile& file, uint32_t arity) {
    if (arity == 0) lx_.fail(lx_.peek(), "recurrence needs arity >= 1");
    uint32_t m = arity - 1;
    lx_.expect(Tok::LBrace, "'{'");
    std::vector<std::pair<std::string, PRDefPtr>> steps;
    while (!lx_.accept(Tok::RBrace)) {
      Token c = lx_.expect_any_word("constructor");
      uint32_t k = file.sig.arity_of(c.text);
      lx_.expect(Tok::LParen, "'('");
      std::vector<std::string> binders; // z.. then x..
      if (lx_.peek().kind != Tok::RParen) {
        for (;;) {
          binders.push_back(lx_.expect_any_word("binder").text);
          if (!lx_.accept(Tok::Comma)) break;
        }
      }
      lx_.expect(Tok::RParen, "')'");
      if (binders.size() != k + m)
        lx_.fail(c, "pattern for '" + c.text + "' must bind " +
                        std::to_string(k + m) + " names");
      std::vector<std::string> ys;
      if (lx_.peek().kind == Tok::LBracket) {
        lx_.next();
        for (;;) {
          ys.push_back(lx_.expect_any_word("result binder").text);
          if (!lx_.accept(Tok::Comma)) break;
        }
        lx_.expect(Tok::RBracket, "']'");
      }
      if (ys.size() != k)
        lx_.fail(c, "'" + c.text + "' needs " + std::to_string(k) +
                        " result binders");
      lx_.expect(Tok::FatArrow, "'=>'");
      // binder environment in step order: x.., z.., y..
      std::vector<std::string> env;
      for (uint32_t i = k; i < binders.size(); ++i) env.push_back(binders[i]);
      for (uint32_t i = 0; i < k; ++i) env.push_back(binders[i]);
      for (const auto& y : ys) env.push_back(y);
      PRDefPtr body = parse_expr(file, env);
      steps.emplace_back(c.text, std::move(body));
      lx_.accept(Tok::Semi);
    }
    return prbuild::rec(file.sig, std::move(steps), m);
  }

  // expression over binders, constructors and defined names, compiled to
  // projections and compositions over the binder environment
  PRDefPtr parse_expr(const PRFile& file, const std::vector<std::string>& env) {
    Token nm = lx_.expect_any_word("expression");
    uint32_t n = static_cast<uint32_t>(env.size());
    for (uint32_t i = 0; i < env.size(); ++i) {
      if (env[i] == nm.text) {
        if (lx_.peek().kind == Tok::LParen)
          lx_.fail(nm, "binder '" + nm.text + "' is not a function");
        return prbuild::proj(i + 1, n);
      }
    }
    PRDefPtr head;
    if (file.sig.is_constructor(nm.text))
      head = prbuild::ctor(file.sig, nm.text);
    else if (PRDefPtr d = file.find(nm.text))
      head = d;
    else
      lx_.fail(nm, "unknown name '" + nm.text + "'");
    std::vector<PRDefPtr> args;
    if (lx_.accept(Tok::LParen)) {
      if (lx_.peek().kind != Tok::RParen) {
        for (;;) {
          args.push_back(parse_expr(file, env));
          if (!lx_.accept(Tok::Comma)) break;
        }
      }
      lx_.expect(Tok::RParen, "')'");
    }
    if (head->arity != args.size())
      lx_.fail(nm, "'" + nm.text + "' expects " + std::to_string(head->arity) +
                       " arguments");
    return prbuild::comp(std::move(head), std::move(args), n);
  }
};

} // namespace

PRDefPtr PRFile::find(const std::string& name) const {
  for (const auto& [n, d] : defs)
    if (n == name) return d;
  return nullptr;
}

PRFile parse_pr_file(const std::string& text) { return PRParser(text).run(); }

Term parse_algebra_term(const FreeAlgebraSignature& sig,
                        const std::string& text) {
  Lexer lx(text);
  std::function<Term()> parse = [&]() -> Term {
    Token nm = lx.expect_any_word("constructor");
    IdIndex i = sig.vocab()->require(nm.text);
    std::vector<Term> args;
    if (lx.accept(Tok::LParen)) {
      if (lx.peek().kind != Tok::RParen) {
        for (;;) {
          args.push_back(parse());
          if (!lx.accept(Tok::Comma)) break;
        }
      }
      lx.expect(Tok::RParen, "')'");
    }
    if (args.size() != sig.vocab()->arity(i))
      lx.fail(nm, "constructor arity mismatch");
    return Term(i, std::move(args));
  };
  Term t = parse();
  if (!lx.at_end()) lx.fail(lx.peek(), "trailing input after term");
  return t;
}

} // namespace stv
