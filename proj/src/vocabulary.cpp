#include "stv/vocabulary.hpp"

namespace stv {

IdIndex Vocabulary::add(std::string name, IdKind kind, uint32_t arity) {
  if (name.empty()) throw Error("empty identifier name");
  if (index_.count(name))
    throw Error("duplicate identifier '" + name + "' in vocabulary");
  IdIndex i = static_cast<IdIndex>(entries_.size());
  index_.emplace(name, i);
  entries_.push_back(VocabEntry{std::move(name), kind, arity});
  return i;
}

std::optional<IdIndex> Vocabulary::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

IdIndex Vocabulary::require(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error("unknown identifier '" + name + "'");
  return *i;
}

bool Vocabulary::purely_functional() const {
  for (const auto& e : entries_)
    if (e.kind == IdKind::Relation) return false;
  return true;
}

std::string Vocabulary::free_name(const std::string& hint) const {
  if (!index_.count(hint)) return hint;
  for (uint64_t n = 1;; ++n) {
    std::string cand = hint + std::to_string(n);
    if (!index_.count(cand)) return cand;
  }
}

} // namespace stv
