#include "stv/ast.hpp"

#include <algorithm>

namespace stv {

namespace build {

Test t_def(Term addr) {
  Test t;
  t.kind = Test::Kind::Convergence;
  t.lhs = std::move(addr);
  return t;
}

Test t_eq(Term lhs, Term rhs) {
  Test t;
  t.kind = Test::Kind::Equation;
  t.lhs = std::move(lhs);
  t.rhs = std::move(rhs);
  return t;
}

Test t_rel(IdIndex rel, std::vector<Term> args) {
  Test t;
  t.kind = Test::Kind::Relational;
  t.rel = rel;
  t.args = std::move(args);
  return t;
}

Guard g(Test t) {
  Guard x;
  x.kind = Guard::Kind::Leaf;
  x.test = std::move(t);
  return x;
}

Guard g_not(Guard a) {
  Guard x;
  x.kind = Guard::Kind::Not;
  x.kids.push_back(std::move(a));
  return x;
}

static Guard combine(Guard::Kind k, Guard a, Guard b) {
  Guard x;
  x.kind = k;
  x.kids.push_back(std::move(a));
  x.kids.push_back(std::move(b));
  return x;
}

Guard g_and(Guard a, Guard b) { return combine(Guard::Kind::And, std::move(a), std::move(b)); }
Guard g_or(Guard a, Guard b) { return combine(Guard::Kind::Or, std::move(a), std::move(b)); }

Revision r_ext(IdIndex f, std::vector<Term> args, Term val) {
  Revision r;
  r.kind = Revision::Kind::FuncExt;
  r.id = f;
  r.args = std::move(args);
  r.val = std::move(val);
  return r;
}

Revision r_contr(IdIndex f, std::vector<Term> args) {
  Revision r;
  r.kind = Revision::Kind::FuncContr;
  r.id = f;
  r.args = std::move(args);
  return r;
}

Revision r_rel_ext(IdIndex rel, std::vector<Term> args) {
  Revision r;
  r.kind = Revision::Kind::RelExt;
  r.id = rel;
  r.args = std::move(args);
  return r;
}

Revision r_rel_contr(IdIndex rel, std::vector<Term> args) {
  Revision r;
  r.kind = Revision::Kind::RelContr;
  r.id = rel;
  r.args = std::move(args);
  return r;
}

Revision r_new(IdIndex tok) {
  Revision r;
  r.kind = Revision::Kind::Inception;
  r.id = tok;
  return r;
}

Revision r_del(IdIndex tok) {
  Revision r;
  r.kind = Revision::Kind::Deletion;
  r.id = tok;
  return r;
}

Program rev(Revision r) {
  Program p;
  p.kind = Program::Kind::Rev;
  p.rev = std::move(r);
  return p;
}

Program seq(std::vector<Program> items) {
  Program p;
  p.kind = Program::Kind::Seq;
  for (auto& it : items) {
    if (it.kind == Program::Kind::Seq) {
      for (auto& k : it.kids) p.kids.push_back(std::move(k));
    } else {
      p.kids.push_back(std::move(it));
    }
  }
  // Singleton sequences collapse so that parse/print round trips are
  // structural identities.
  if (p.kids.size() == 1) return std::move(p.kids[0]);
  return p;
}

Program if_(Guard g, Program then_branch, Program else_branch) {
  Program p;
  p.kind = Program::Kind::If;
  p.guard = std::move(g);
  p.kids.push_back(std::move(then_branch));
  p.kids.push_back(std::move(else_branch));
  return p;
}

Program do_st(Guard g, Program body) {
  Program p;
  p.kind = Program::Kind::DoST;
  p.guard = std::move(g);
  p.kids.push_back(std::move(body));
  return p;
}

Program do_stv(Guard g, std::vector<IdIndex> variant, Program body) {
  Program p;
  p.kind = Program::Kind::DoSTV;
  p.guard = std::move(g);
  std::sort(variant.begin(), variant.end());
  variant.erase(std::unique(variant.begin(), variant.end()), variant.end());
  p.variant = std::move(variant);
  p.kids.push_back(std::move(body));
  return p;
}

std::vector<Program> assign(Vocabulary& vocab, IdIndex f,
                            std::vector<Term> args, Term val,
                            const std::string& fresh_hint) {
  IdIndex b = vocab.add(vocab.free_name(fresh_hint), IdKind::Function, 0);
  std::vector<Program> out;
  out.push_back(rev(r_ext(b, {}, std::move(val))));
  out.push_back(rev(r_contr(f, args)));
  out.push_back(rev(r_ext(f, std::move(args), Term(b))));
  out.push_back(rev(r_contr(b, {})));
  return out;
}

} // namespace build

void walk(const Program& p, const std::function<void(const Program&)>& fn) {
  fn(p);
  for (const auto& k : p.kids) walk(k, fn);
}

} // namespace stv
