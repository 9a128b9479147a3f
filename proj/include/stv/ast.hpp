#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stv/term.hpp"
#include "stv/vocabulary.hpp"

namespace stv {

struct SourceLoc {
  uint32_t line = 0, col = 0;
};

// Guard leaf: convergence `def a`, equation `a == b`, or relational `R(a..)`.
struct Test {
  enum class Kind : uint8_t { Convergence, Equation, Relational };
  Kind kind = Kind::Convergence;
  Term lhs;               // Convergence address / Equation lhs
  Term rhs;               // Equation rhs
  IdIndex rel = 0;        // Relational identifier
  std::vector<Term> args; // Relational arguments

  bool operator==(const Test&) const = default;
};

struct Guard {
  enum class Kind : uint8_t { Leaf, Not, And, Or };
  Kind kind = Kind::Leaf;
  Test test;               // Leaf
  std::vector<Guard> kids; // Not: 1, And/Or: 2+

  bool operator==(const Guard&) const = default;
};

// The six atomic structure updates.
struct Revision {
  enum class Kind : uint8_t {
    FuncExt,   // f(a..) <- b
    FuncContr, // drop f(a..)
    RelExt,    // R+(a..)
    RelContr,  // R-(a..)
    Inception, // new c
    Deletion,  // del c
  };
  Kind kind = Kind::FuncExt;
  IdIndex id = 0;         // eigen identifier; the token for new/del
  std::vector<Term> args; // addresses (empty for token entries and new/del)
  Term val;               // FuncExt value address

  bool operator==(const Revision& o) const {
    if (kind != o.kind || id != o.id || args != o.args) return false;
    if (kind == Kind::FuncExt) return val == o.val;
    return true;
  }
};

// Program AST. Seq nodes are always flattened (no Seq directly under Seq),
// which keeps parse/print round trips structural identities.
struct Program {
  enum class Kind : uint8_t { Rev, Seq, If, DoST, DoSTV };
  Kind kind = Kind::Seq;
  Revision rev;                 // Rev
  Guard guard;                  // If / DoST / DoSTV
  std::vector<IdIndex> variant; // DoSTV, sorted by identifier index
  std::vector<Program> kids;    // Seq items; If: {then, else}; Do: {body}
  SourceLoc loc;

  bool operator==(const Program& o) const { // ignores source locations
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::Rev: return rev == o.rev;
      case Kind::Seq: return kids == o.kids;
      case Kind::If: return guard == o.guard && kids == o.kids;
      case Kind::DoST: return guard == o.guard && kids == o.kids;
      case Kind::DoSTV:
        return guard == o.guard && variant == o.variant && kids == o.kids;
    }
    return false;
  }
};

// A program together with the vocabulary it is written over (W), including
// any fresh tokens introduced by desugaring.
struct ProgramUnit {
  std::shared_ptr<const Vocabulary> vocab;
  Program body;
};

// Construction helpers; generators and compilers build ASTs through these.
namespace build {

Test t_def(Term addr);
Test t_eq(Term lhs, Term rhs);
Test t_rel(IdIndex rel, std::vector<Term> args);

Guard g(Test t);
Guard g_not(Guard a);
Guard g_and(Guard a, Guard b);
Guard g_or(Guard a, Guard b);

Revision r_ext(IdIndex f, std::vector<Term> args, Term val);
Revision r_contr(IdIndex f, std::vector<Term> args);
Revision r_rel_ext(IdIndex r, std::vector<Term> args);
Revision r_rel_contr(IdIndex r, std::vector<Term> args);
Revision r_new(IdIndex tok);
Revision r_del(IdIndex tok);

Program rev(Revision r);
Program seq(std::vector<Program> items); // flattens nested Seq
Program if_(Guard g, Program then_branch, Program else_branch);
Program do_st(Guard g, Program body);
Program do_stv(Guard g, std::vector<IdIndex> variant, Program body);

// The paper's assignment sugar f(args) := val as the four-revision
// sequence with a fresh token, spliced into the surrounding Seq.
std::vector<Program> assign(Vocabulary& vocab, IdIndex f,
                            std::vector<Term> args, Term val,
                            const std::string& fresh_hint = "b");

} // namespace build

// Preorder walk over program nodes.
void walk(const Program& p, const std::function<void(const Program&)>& fn);

} // namespace stv
