#include "stv/parser.hpp"

#include <unordered_set>

#include "lex.hpp"

namespace stv {

using lex::Lexer;
using lex::Tok;
using lex::Token;

namespace {

const std::unordered_set<std::string> kKeywords = {
    "vocab", "fn", "rel", "if", "do", "def",
    "not",   "and", "or", "drop", "new", "del",
};

class ProgramParser {
public:
  ProgramParser(const std::string& text, Vocabulary vocab)
      : lx_(text), vocab_(std::move(vocab)) {}

  ProgramUnit run(bool expect_header) {
    if (expect_header) parse_header();
    Program body = parse_sequence(Tok::End);
    ProgramUnit unit;
    unit.vocab = std::make_shared<Vocabulary>(std::move(vocab_));
    unit.body = std::move(body);
    return unit;
  }

private:
  Lexer lx_;
  Vocabulary vocab_;

  void parse_header() {
    if (!lx_.accept_word("vocab"))
      lx_.fail(lx_.peek(), "expected 'vocab { ... }' header");
    lx_.expect(Tok::LBrace, "'{'");
    while (!lx_.accept(Tok::RBrace)) {
      bool fn = lx_.accept_word("fn");
      if (!fn && !lx_.accept_word("rel"))
        lx_.fail(lx_.peek(), "expected 'fn' or 'rel' declaration");
      Token nm = identifier("identifier name");
      lx_.expect(Tok::Slash, "'/' before arity");
      uint64_t ar = lex::to_natural(lx_.expect_any_word("arity"));
      vocab_.add(nm.text, fn ? IdKind::Function : IdKind::Relation,
                 static_cast<uint32_t>(ar));
    }
  }

  Token identifier(const std::string& what) {
    Token t = lx_.expect_any_word(what);
    if (kKeywords.count(t.text)) lx_.fail(t, "'" + t.text + "' is reserved");
    return t;
  }

  IdIndex resolve(const Token& t) {
    auto i = vocab_.find(t.text);
    if (!i) lx_.fail(t, "unknown identifier '" + t.text + "'");
    return *i;
  }

  SourceLoc loc_of(const Token& t) { return SourceLoc{t.line, t.col}; }

  // address := name | name '(' address,.. ')'
  Term parse_address() {
    Token nm = identifier("address");
    IdIndex i = resolve(nm);
    if (!vocab_.is_function(i))
      lx_.fail(nm, "relation identifier '" + nm.text + "' in address position");
    std::vector<Term> args;
    if (lx_.accept(Tok::LParen)) {
      if (lx_.peek().kind != Tok::RParen) {
        for (;;) {
          args.push_back(parse_address());
          if (!lx_.accept(Tok::Comma)) break;
        }
      }
      lx_.expect(Tok::RParen, "')'");
    }
    if (vocab_.arity(i) != args.size())
      lx_.fail(nm, "arity mismatch for '" + nm.text + "': expected " +
                       std::to_string(vocab_.arity(i)) + ", got " +
                       std::to_string(args.size()));
    return Term(i, std::move(args));
  }

  Test parse_test() {
    if (lx_.accept_word("def")) return build::t_def(parse_address());
    Token head = lx_.peek();
    // A relational test R(args) looks like an address until the head
    // resolves to a relation identifier.
    if (head.kind == Tok::Word && !kKeywords.count(head.text)) {
      auto i = vocab_.find(head.text);
      if (i && vocab_.is_relation(*i)) {
        lx_.next();
        std::vector<Term> args;
        lx_.expect(Tok::LParen, "'(' after relation identifier");
        if (lx_.peek().kind != Tok::RParen) {
          for (;;) {
            args.push_back(parse_address());
            if (!lx_.accept(Tok::Comma)) break;
          }
        }
        lx_.expect(Tok::RParen, "')'");
        if (vocab_.arity(*i) != args.size())
          lx_.fail(head, "arity mismatch for relation '" + head.text + "'");
        return build::t_rel(*i, std::move(args));
      }
    }
    Term lhs = parse_address();
    lx_.expect(Tok::EqEq, "'==' in equation");
    Term rhs = parse_address();
    return build::t_eq(std::move(lhs), std::move(rhs));
  }

  Guard parse_guard() { return parse_or(); }

  Guard parse_or() {
    Guard g = parse_and();
    while (lx_.accept_word("or")) g = build::g_or(std::move(g), parse_and());
    return g;
  }

  Guard parse_and() {
    Guard g = parse_not();
    while (lx_.accept_word("and")) g = build::g_and(std::move(g), parse_not());
    return g;
  }

  Guard parse_not() {
    if (lx_.accept_word("not")) return build::g_not(parse_not());
    if (lx_.accept(Tok::LParen)) {
      Guard g = parse_guard();
      lx_.expect(Tok::RParen, "')'");
      return g;
    }
    return build::g(parse_test());
  }

  Program parse_block() {
    lx_.expect(Tok::LBrace, "'{'");
    Program p = parse_sequence(Tok::RBrace);
    lx_.expect(Tok::RBrace, "'}'");
    return p;
  }

  Program parse_sequence(Tok stop) {
    std::vector<Program> items;
    while (lx_.peek().kind != stop) {
      parse_statement(items);
      if (!lx_.accept(Tok::Semi)) break;
    }
    if (lx_.peek().kind != stop)
      lx_.fail(lx_.peek(), "expected ';' between statements");
    return build::seq(std::move(items));
  }

  void parse_statement(std::vector<Program>& out) {
    Token head = lx_.peek();
    SourceLoc loc = loc_of(head);

    if (lx_.accept_word("if")) {
      lx_.expect(Tok::LBracket, "'[' before guard");
      Guard g = parse_guard();
      lx_.expect(Tok::RBracket, "']' after guard");
      Program then_b = parse_block();
      Program else_b = parse_block();
      Program p = build::if_(std::move(g), std::move(then_b), std::move(else_b));
      p.loc = loc;
      out.push_back(std::move(p));
      return;
    }

    if (lx_.accept_word("do")) {
      lx_.expect(Tok::LBracket, "'[' before guard");
      Guard g = parse_guard();
      lx_.expect(Tok::RBracket, "']' after guard");
      std::vector<IdIndex> variant;
      bool stv = false;
      if (lx_.peek().kind == Tok::LBracket) {
        lx_.next();
        stv = true;
        for (;;) {
          Token nm = identifier("variant component");
          IdIndex i = resolve(nm);
          if (vocab_.arity(i) == 0)
            lx_.fail(nm, "variant component '" + nm.text +
                             "' must have positive arity");
          variant.push_back(i);
          if (!lx_.accept(Tok::Comma)) break;
        }
        lx_.expect(Tok::RBracket, "']' after variant");
        if (variant.empty()) lx_.fail(head, "empty variant");
      }
      Program body = parse_block();
      Program p = stv ? build::do_stv(std::move(g), std::move(variant),
                                      std::move(body))
                      : build::do_st(std::move(g), std::move(body));
      p.loc = loc;
      out.push_back(std::move(p));
      return;
    }

    if (lx_.accept_word("drop")) {
      auto [i, args] = parse_application(/*functions_only=*/true);
      Program p = build::rev(build::r_contr(i, std::move(args)));
      p.loc = loc;
      out.push_back(std::move(p));
      return;
    }

    if (lx_.accept_word("new")) {
      auto [i, args] = parse_application(true);
      if (args.empty() && vocab_.arity(i) == 0) {
        Program p = build::rev(build::r_new(i));
        p.loc = loc;
        out.push_back(std::move(p));
      } else {
        // new f(a..)  ==>  new c; f(a..) <- c; drop c   (fresh c)
        IdIndex c = vocab_.add(vocab_.free_name("c"), IdKind::Function, 0);
        out.push_back(with_loc(build::rev(build::r_new(c)), loc));
        out.push_back(
            with_loc(build::rev(build::r_ext(i, std::move(args), Term(c))), loc));
        out.push_back(with_loc(build::rev(build::r_contr(c, {})), loc));
      }
      return;
    }

    if (lx_.accept_word("del")) {
      auto [i, args] = parse_application(true);
      if (args.empty() && vocab_.arity(i) == 0) {
        Program p = build::rev(build::r_del(i));
        p.loc = loc;
        out.push_back(std::move(p));
      } else {
        // del f(a..)  ==>  c <- f(a..); del c   (fresh c)
        IdIndex c = vocab_.add(vocab_.free_name("c"), IdKind::Function, 0);
        out.push_back(with_loc(
            build::rev(build::r_ext(c, {}, Term(i, std::move(args)))), loc));
        out.push_back(with_loc(build::rev(build::r_del(c)), loc));
      }
      return;
    }

    // Statements headed by an identifier: extensions, assignments and
    // relation revisions.
    Token nm = identifier("statement");
    IdIndex i = resolve(nm);

    if (vocab_.is_relation(i)) {
      bool ext = lx_.accept(Tok::Plus);
      if (!ext && !lx_.accept(Tok::Minus))
        lx_.fail(lx_.peek(), "expected '+' or '-' after relation identifier");
      std::vector<Term> args = parse_arg_list(nm, vocab_.arity(i));
      Program p = build::rev(ext ? build::r_rel_ext(i, std::move(args))
                                 : build::r_rel_contr(i, std::move(args)));
      p.loc = loc;
      out.push_back(std::move(p));
      return;
    }

    std::vector<Term> args;
    if (lx_.peek().kind == Tok::LParen)
      args = parse_arg_list(nm, vocab_.arity(i));
    else if (vocab_.arity(i) != 0)
      lx_.fail(nm, "'" + nm.text + "' expects arguments");

    if (lx_.accept(Tok::BindTo)) {
      Term val = parse_address();
      Program p = build::rev(build::r_ext(i, std::move(args), std::move(val)));
      p.loc = loc;
      out.push_back(std::move(p));
      return;
    }
    if (lx_.accept(Tok::Assign)) {
      Term val = parse_address();
      for (auto& st :
           build::assign(vocab_, i, std::move(args), std::move(val)))
        out.push_back(with_loc(std::move(st), loc));
      return;
    }
    lx_.fail(lx_.peek(), "expected '<-', ':=', '+' or '-' in statement");
  }

  static Program with_loc(Program p, SourceLoc loc) {
    p.loc = loc;
    return p;
  }

  std::pair<IdIndex, std::vector<Term>> parse_application(bool functions_only) {
    Token nm = identifier("identifier");
    IdIndex i = resolve(nm);
    if (functions_only && !vocab_.is_function(i))
      lx_.fail(nm, "expected a function identifier");
    std::vector<Term> args;
    if (lx_.peek().kind == Tok::LParen)
      args = parse_arg_list(nm, vocab_.arity(i));
    else if (vocab_.arity(i) != 0)
      lx_.fail(nm, "'" + nm.text + "' expects arguments");
    return {i, std::move(args)};
  }

  std::vector<Term> parse_arg_list(const Token& nm, uint32_t arity) {
    std::vector<Term> args;
    lx_.expect(Tok::LParen, "'('");
    if (lx_.peek().kind != Tok::RParen) {
      for (;;) {
        args.push_back(parse_address());
        if (!lx_.accept(Tok::Comma)) break;
      }
    }
    lx_.expect(Tok::RParen, "')'");
    if (args.size() != arity)
      lx_.fail(nm, "arity mismatch for '" + nm.text + "': expected " +
                       std::to_string(arity) + ", got " +
                       std::to_string(args.size()));
    return args;
  }
};

} // namespace

ProgramUnit parse_program_unit(const std::string& text) {
  return ProgramParser(text, Vocabulary{}).run(/*expect_header=*/true);
}

ProgramUnit parse_program(const std::string& text, const Vocabulary& vocab) {
  return ProgramParser(text, vocab).run(/*expect_header=*/false);
}

} // namespace stv
