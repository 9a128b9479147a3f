#include "stv/term.hpp"

#include <algorithm>

namespace stv {

int term_compare(const Term& a, const Term& b) {
  if (a.head != b.head) return a.head < b.head ? -1 : 1;
  size_t n = std::min(a.args.size(), b.args.size());
  for (size_t i = 0; i < n; ++i) {
    int c = term_compare(a.args[i], b.args[i]);
    if (c != 0) return c;
  }
  if (a.args.size() != b.args.size())
    return a.args.size() < b.args.size() ? -1 : 1;
  return 0;
}

uint32_t term_height(const Term& t) {
  uint32_t h = 0;
  for (const auto& a : t.args) h = std::max(h, term_height(a));
  return h + 1;
}

void validate_term(const Vocabulary& vocab, const Term& t) {
  if (t.head >= vocab.count()) throw Error("term head out of range");
  const VocabEntry& e = vocab.entry(t.head);
  if (e.kind != IdKind::Function)
    throw Error("relation identifier '" + e.name + "' used in term position");
  if (e.arity != t.args.size())
    throw Error("arity mismatch for '" + e.name + "': expected " +
                std::to_string(e.arity) + " arguments, got " +
                std::to_string(t.args.size()));
  for (const auto& a : t.args) validate_term(vocab, a);
}

std::string term_to_string(const Vocabulary& vocab, const Term& t) {
  std::string s = vocab.name(t.head);
  if (!t.args.empty()) {
    s += '(';
    for (size_t i = 0; i < t.args.size(); ++i) {
      if (i) s += ',';
      s += term_to_string(vocab, t.args[i]);
    }
    s += ')';
  }
  return s;
}

} // namespace stv
