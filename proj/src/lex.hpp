#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stv/error.hpp"

namespace stv::lex {

enum class Tok : uint8_t {
  Word,    // identifier or decimal natural
  Quoted,  // "..." (content without quotes)
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Semi, Comma, Plus, Minus, Slash, Equal, Colon,
  Arrow,    // ->
  FatArrow, // =>
  BindTo,   // <-
  Assign,   // :=
  EqEq,     // ==
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  uint32_t line = 1, col = 1;
};

// Shared tokenizer for program, structure, TM and PR definition files.
// '%' starts a comment running to end of line. Words are maximal runs of
// [A-Za-z0-9_'] and non-ASCII bytes, so plain digits and names like 0h or
// the reserved token are all ordinary identifiers.
class Lexer {
public:
  explicit Lexer(std::string_view text);

  const Token& peek(size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const;

  // Convenience: consume a token of the given kind or fail.
  Token expect(Tok kind, const std::string& what);
  // Consume if the next token matches; returns whether it did.
  bool accept(Tok kind);
  bool accept_word(const std::string& w);
  Token expect_any_word(const std::string& what);

private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

bool is_natural(const std::string& word);
uint64_t to_natural(const Token& t);

} // namespace stv::lex
