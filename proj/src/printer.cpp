#include "stv/printer.hpp"

namespace stv {

namespace {

int guard_level(const Guard& g) {
  switch (g.kind) {
    case Guard::Kind::Or: return 0;
    case Guard::Kind::And: return 1;
    case Guard::Kind::Not: return 2;
    case Guard::Kind::Leaf: return 3;
  }
  return 3;
}

void print_test(std::string& out, const Vocabulary& v, const Test& t) {
  switch (t.kind) {
    case Test::Kind::Convergence:
      out += "def ";
      out += term_to_string(v, t.lhs);
      break;
    case Test::Kind::Equation:
      out += term_to_string(v, t.lhs);
      out += " == ";
      out += term_to_string(v, t.rhs);
      break;
    case Test::Kind::Relational:
      out += v.name(t.rel);
      out += '(';
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ',';
        out += term_to_string(v, t.args[i]);
      }
      out += ')';
      break;
  }
}

void print_guard(std::string& out, const Vocabulary& v, const Guard& g,
                 int parent_level) {
  int lvl = guard_level(g);
  bool parens = lvl < parent_level;
  if (parens) out += '(';
  switch (g.kind) {
    case Guard::Kind::Leaf:
      print_test(out, v, g.test);
      break;
    case Guard::Kind::Not:
      out += "not ";
      print_guard(out, v, g.kids[0], 2);
      break;
    case Guard::Kind::And:
      print_guard(out, v, g.kids[0], 1);
      out += " and ";
      print_guard(out, v, g.kids[1], 2);
      break;
    case Guard::Kind::Or:
      print_guard(out, v, g.kids[0], 0);
      out += " or ";
      print_guard(out, v, g.kids[1], 1);
      break;
  }
  if (parens) out += ')';
}

void print_args(std::string& out, const Vocabulary& v,
                const std::vector<Term>& args) {
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += term_to_string(v, args[i]);
  }
  out += ')';
}

void print_revision(std::string& out, const Vocabulary& v, const Revision& r) {
  switch (r.kind) {
    case Revision::Kind::FuncExt:
      out += v.name(r.id);
      if (!r.args.empty()) print_args(out, v, r.args);
      out += " <- ";
      out += term_to_string(v, r.val);
      break;
    case Revision::Kind::FuncContr:
      out += "drop ";
      out += v.name(r.id);
      if (!r.args.empty()) print_args(out, v, r.args);
      break;
    case Revision::Kind::RelExt:
      out += v.name(r.id);
      out += '+';
      print_args(out, v, r.args);
      break;
    case Revision::Kind::RelContr:
      out += v.name(r.id);
      out += '-';
      print_args(out, v, r.args);
      break;
    case Revision::Kind::Inception:
      out += "new ";
      out += v.name(r.id);
      break;
    case Revision::Kind::Deletion:
      out += "del ";
      out += v.name(r.id);
      break;
  }
}

void indent(std::string& out, int depth) {
  out.append(static_cast<size_t>(depth) * 2, ' ');
}

void print_block(std::string& out, const Vocabulary& v, const Program& p,
                 int depth);

void print_statements(std::string& out, const Vocabulary& v, const Program& p,
                      int depth) {
  const std::vector<Program>* items = nullptr;
  std::vector<Program> one;
  if (p.kind == Program::Kind::Seq) {
    items = &p.kids;
  } else {
    one.push_back(p);
    items = &one;
  }
  for (size_t i = 0; i < items->size(); ++i) {
    const Program& st = (*items)[i];
    indent(out, depth);
    switch (st.kind) {
      case Program::Kind::Rev:
        print_revision(out, v, st.rev);
        break;
      case Program::Kind::Seq:
        // only possible for an empty nested sequence; nothing to print
        break;
      case Program::Kind::If:
        out += "if [";
        print_guard(out, v, st.guard, 0);
        out += "] ";
        print_block(out, v, st.kids[0], depth);
        out += ' ';
        print_block(out, v, st.kids[1], depth);
        break;
      case Program::Kind::DoST:
      case Program::Kind::DoSTV:
        out += "do [";
        print_guard(out, v, st.guard, 0);
        out += ']';
        if (st.kind == Program::Kind::DoSTV) {
          out += " [";
          for (size_t k = 0; k < st.variant.size(); ++k) {
            if (k) out += ", ";
            out += v.name(st.variant[k]);
          }
          out += ']';
        }
        out += ' ';
        print_block(out, v, st.kids[0], depth);
        break;
    }
    if (i + 1 < items->size()) out += ';';
    out += '\n';
  }
}

void print_block(std::string& out, const Vocabulary& v, const Program& p,
                 int depth) {
  bool empty = p.kind == Program::Kind::Seq && p.kids.empty();
  if (empty) {
    out += "{}";
    return;
  }
  out += "{\n";
  print_statements(out, v, p, depth + 1);
  indent(out, depth);
  out += '}';
}

} // namespace

std::string guard_to_string(const Vocabulary& vocab, const Guard& g) {
  std::string out;
  print_guard(out, vocab, g, 0);
  return out;
}

std::string revision_to_string(const Vocabulary& vocab, const Revision& r) {
  std::string out;
  print_revision(out, vocab, r);
  return out;
}

std::string pretty_print_body(const Vocabulary& vocab, const Program& p) {
  std::string out;
  print_statements(out, vocab, p, 0);
  return out;
}

std::string pretty_print(const ProgramUnit& unit) {
  std::string out = "vocab {";
  for (const auto& e : unit.vocab->entries()) {
    out += (e.kind == IdKind::Function) ? " fn " : " rel ";
    out += e.name;
    out += '/';
    out += std::to_string(e.arity);
  }
  out += " }\n";
  out += pretty_print_body(*unit.vocab, unit.body);
  return out;
}

} // namespace stv
