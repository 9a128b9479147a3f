#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stv/error.hpp"

namespace stv {

enum class IdKind : uint8_t { Function, Relation };

// Index of an identifier within its vocabulary. Declaration order is the
// fixed total order used everywhere a deterministic identifier order is
// needed (canonical forms, generated programs, reports).
using IdIndex = uint32_t;

struct VocabEntry {
  std::string name;
  IdKind kind = IdKind::Function;
  uint32_t arity = 0;

  bool operator==(const VocabEntry&) const = default;
};

// A finite set of function- and relation-identifiers with arities.
// Arity-0 functions are tokens, arity-1 functions are pointers.
// Append-only: indices stay stable as identifiers are added.
class Vocabulary {
public:
  Vocabulary() = default;

  IdIndex add(std::string name, IdKind kind, uint32_t arity);

  std::optional<IdIndex> find(const std::string& name) const;
  IdIndex require(const std::string& name) const;

  const VocabEntry& entry(IdIndex i) const { return entries_[i]; }
  const std::string& name(IdIndex i) const { return entries_[i].name; }
  uint32_t arity(IdIndex i) const { return entries_[i].arity; }
  IdKind kind(IdIndex i) const { return entries_[i].kind; }
  bool is_function(IdIndex i) const { return kind(i) == IdKind::Function; }
  bool is_relation(IdIndex i) const { return kind(i) == IdKind::Relation; }
  bool is_token(IdIndex i) const { return is_function(i) && arity(i) == 0; }

  size_t count() const { return entries_.size(); }
  const std::vector<VocabEntry>& entries() const { return entries_; }

  bool purely_functional() const;

  // Smallest name not yet present, derived from `hint` by suffixing the
  // least natural that frees it: "b", then "b1", "b2", ...
  std::string free_name(const std::string& hint) const;

  bool operator==(const Vocabulary& other) const {
    return entries_ == other.entries_;
  }

private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, IdIndex> index_;
};

// Reserved token denoting the whole term in a term-structure.
inline const std::string kRootToken = "•"; // •

} // namespace stv
