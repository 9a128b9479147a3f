#include "lex.hpp"

namespace stv::lex {

namespace {

bool word_char(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '\'' || c >= 0x80;
}

} // namespace

Lexer::Lexer(std::string_view text) {
  uint32_t line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; ++j) {
      if (text[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += k;
  };
  while (i < text.size()) {
    unsigned char c = text[i];
    if (c == '%') {
      size_t j = i;
      while (j < text.size() && text[j] != '\n') ++j;
      advance(j - i);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (c == '"') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw Error("line " + std::to_string(line) + ": unterminated string");
      t.kind = Tok::Quoted;
      t.text = std::string(text.substr(i + 1, j - i - 1));
      advance(j + 1 - i);
      toks_.push_back(std::move(t));
      continue;
    }
    if (word_char(c)) {
      size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      t.kind = Tok::Word;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
      toks_.push_back(std::move(t));
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (two('-', '>')) {
      t.kind = Tok::Arrow;
      advance(2);
    } else if (two('<', '-')) {
      t.kind = Tok::BindTo;
      advance(2);
    } else if (two(':', '=')) {
      t.kind = Tok::Assign;
      advance(2);
    } else if (two('=', '=')) {
      t.kind = Tok::EqEq;
      advance(2);
    } else if (two('=', '>')) {
      t.kind = Tok::FatArrow;
      advance(2);
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case ';': t.kind = Tok::Semi; break;
        case ',': t.kind = Tok::Comma; break;
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '/': t.kind = Tok::Slash; break;
        case '=': t.kind = Tok::Equal; break;
        case ':': t.kind = Tok::Colon; break;
        default:
          throw Error("line " + std::to_string(line) + ":" +
                      std::to_string(col) + ": unexpected character '" +
                      std::string(1, static_cast<char>(c)) + "'");
      }
      advance(1);
    }
    toks_.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  toks_.push_back(std::move(end));
}

const Token& Lexer::peek(size_t ahead) const {
  size_t p = pos_ + ahead;
  if (p >= toks_.size()) p = toks_.size() - 1;
  return toks_[p];
}

Token Lexer::next() {
  Token t = toks_[pos_];
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

void Lexer::fail(const Token& at, const std::string& msg) const {
  throw Error("line " + std::to_string(at.line) + ":" +
              std::to_string(at.col) + ": " + msg);
}

Token Lexer::expect(Tok kind, const std::string& what) {
  if (peek().kind != kind) fail(peek(), "expected " + what);
  return next();
}

bool Lexer::accept(Tok kind) {
  if (peek().kind != kind) return false;
  next();
  return true;
}

bool Lexer::accept_word(const std::string& w) {
  if (peek().kind != Tok::Word || peek().text != w) return false;
  next();
  return true;
}

Token Lexer::expect_any_word(const std::string& what) {
  if (peek().kind != Tok::Word) fail(peek(), "expected " + what);
  return next();
}

bool is_natural(const std::string& word) {
  if (word.empty()) return false;
  for (char c : word)
    if (c < '0' || c > '9') return false;
  return true;
}

uint64_t to_natural(const Token& t) {
  if (t.kind != Tok::Word || !is_natural(t.text))
    throw Error("line " + std::to_string(t.line) + ": expected a natural");
  return std::stoull(t.text);
}

} // namespace stv::lex
