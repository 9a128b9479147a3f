#pragma once

#include <string>
#include <vector>

#include "stv/vocabulary.hpp"

namespace stv {

// Closed term over a vocabulary's function identifiers. Terms double as
// addresses in programs and as the values of free algebras.
struct Term {
  IdIndex head = 0;
  std::vector<Term> args;

  Term() = default;
  explicit Term(IdIndex h) : head(h) {}
  Term(IdIndex h, std::vector<Term> a) : head(h), args(std::move(a)) {}

  bool operator==(const Term& other) const {
    return head == other.head && args == other.args;
  }
};

// Lexicographic order: head index first, then arguments left to right.
int term_compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const {
    return term_compare(a, b) < 0;
  }
};

// height(f t1..tk) = 1 + max(height(ti)); tokens have height 1.
uint32_t term_height(const Term& t);

// Checks the term against `vocab`: every head a function identifier with
// matching argument count. Throws Error otherwise.
void validate_term(const Vocabulary& vocab, const Term& t);

// Renders as f(g(a),b); bare name for tokens.
std::string term_to_string(const Vocabulary& vocab, const Term& t);

} // namespace stv
