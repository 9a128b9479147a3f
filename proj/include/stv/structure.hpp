#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stv/term.hpp"
#include "stv/vocabulary.hpp"

namespace stv {

// Node identity within one structure. Ids are never reused after deletion,
// so traces can refer to deleted nodes unambiguously.
using NodeId = uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

namespace detail {

uint64_t pack2(NodeId a, NodeId b);

struct VecHash {
  size_t operator()(const std::vector<NodeId>& v) const;
};

// Partial-function interpretation, storage specialised by arity.
class FuncInterp {
public:
  explicit FuncInterp(uint32_t arity = 0) : arity_(arity) {}

  uint32_t arity() const { return arity_; }
  std::optional<NodeId> get(std::span<const NodeId> args) const;
  bool insert(std::span<const NodeId> args, NodeId val); // false if present
  bool erase(std::span<const NodeId> args);              // false if absent
  uint64_t count() const;
  void for_each(
      const std::function<void(const std::vector<NodeId>&, NodeId)>& fn) const;
  // Removes every entry whose args or value contain `n`; returns how many.
  uint64_t erase_node(NodeId n);
  void clear();

private:
  uint32_t arity_;
  std::optional<NodeId> tok_;
  std::unordered_map<NodeId, NodeId> unary_;
  std::unordered_map<uint64_t, NodeId> binary_;
  std::unordered_map<std::vector<NodeId>, NodeId, VecHash> wide_;
};

// Relation interpretation: a finite set of tuples.
class RelInterp {
public:
  explicit RelInterp(uint32_t arity = 0) : arity_(arity) {}

  uint32_t arity() const { return arity_; }
  bool contains(std::span<const NodeId> args) const;
  bool insert(std::span<const NodeId> args);
  bool erase(std::span<const NodeId> args);
  uint64_t count() const;
  void for_each(const std::function<void(const std::vector<NodeId>&)>& fn) const;
  uint64_t erase_node(NodeId n);

private:
  uint32_t arity_;
  bool nullary_ = false;
  std::unordered_set<NodeId> unary_;
  std::unordered_set<uint64_t> binary_;
  std::unordered_set<std::vector<NodeId>, VecHash> wide_;
};

} // namespace detail

// Accessibility closure of a structure: the accessible nodes with their
// heights (minimal address height) and a canonical total order on them.
struct AccessInfo {
  // Accessible nodes in canonical order: ascending height, ties broken by
  // the minimal address under the vocabulary's declaration order.
  std::vector<NodeId> order;
  // height per node (kNoHeight where inaccessible).
  std::vector<uint32_t> height;
  // rank per node: position in `order`, or kNoRank where inaccessible.
  std::vector<uint32_t> rank;

  static constexpr uint32_t kNoHeight = 0;
  static constexpr uint32_t kNoRank = 0xffffffffu;

  bool accessible(NodeId n) const {
    return n < height.size() && height[n] != kNoHeight;
  }
};

// A finite partial structure: non-empty universe, partial-function and
// relation interpretations over a vocabulary. This is the machine state of
// the whole toolchain. Mutation is confined to the small revision-shaped
// API below; everything else treats structures as values.
class PartialStructure {
public:
  // One node, everything else empty.
  explicit PartialStructure(std::shared_ptr<const Vocabulary> vocab,
                            uint32_t initial_nodes = 1);

  const Vocabulary& vocab() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& vocab_ptr() const { return vocab_; }

  bool alive(NodeId n) const { return n < alive_.size() && alive_[n]; }
  uint32_t node_count() const { return node_count_; }
  NodeId peak_node_id() const { return next_node_; }
  std::vector<NodeId> nodes() const;

  // Count of tuples in relations and positive-arity function graphs.
  // Token entries are excluded, which makes #T(w) = |w| exact.
  uint64_t size() const { return size_; }

  NodeId add_node();                 // ids never reused after deletion
  // Removes the node and every tuple containing it. Returns, per identifier
  // index, how many tuples were removed (loop variants need the counts).
  std::vector<std::pair<IdIndex, uint64_t>> delete_node(NodeId n);

  std::optional<NodeId> func_get(IdIndex f, std::span<const NodeId> args) const;
  bool func_insert(IdIndex f, std::span<const NodeId> args, NodeId val);
  bool func_erase(IdIndex f, std::span<const NodeId> args);
  bool rel_contains(IdIndex r, std::span<const NodeId> args) const;
  bool rel_insert(IdIndex r, std::span<const NodeId> args);
  bool rel_erase(IdIndex r, std::span<const NodeId> args);

  std::optional<NodeId> func_get(IdIndex f,
                                 std::initializer_list<NodeId> args) const {
    return func_get(f, std::span<const NodeId>(args.begin(), args.size()));
  }
  bool func_insert(IdIndex f, std::initializer_list<NodeId> args, NodeId val) {
    return func_insert(f, std::span<const NodeId>(args.begin(), args.size()),
                       val);
  }
  bool func_erase(IdIndex f, std::initializer_list<NodeId> args) {
    return func_erase(f, std::span<const NodeId>(args.begin(), args.size()));
  }
  bool rel_contains(IdIndex r, std::initializer_list<NodeId> args) const {
    return rel_contains(r, std::span<const NodeId>(args.begin(), args.size()));
  }
  bool rel_insert(IdIndex r, std::initializer_list<NodeId> args) {
    return rel_insert(r, std::span<const NodeId>(args.begin(), args.size()));
  }
  bool rel_erase(IdIndex r, std::initializer_list<NodeId> args) {
    return rel_erase(r, std::span<const NodeId>(args.begin(), args.size()));
  }

  const detail::FuncInterp& func(IdIndex f) const;
  const detail::RelInterp& rel(IdIndex r) const;

  // Value of a closed term; absent when any application is undefined.
  // The term must be well-sorted (validate_term) — ill-sorted terms throw.
  std::optional<NodeId> eval(const Term& t) const;

  AccessInfo accessible() const;

  // Accessible with every node having exactly one address.
  bool is_free() const;

  // New structure keeping only identifiers named in `names` (which must
  // exist). Universe unchanged.
  PartialStructure reduct(const std::vector<std::string>& names) const;

  // New structure over a vocabulary renaming each identifier by `map`
  // (identity where missing). Collisions throw.
  PartialStructure rename(
      const std::unordered_map<std::string, std::string>& map) const;

  // W-expansion: same universe and interpretations, new identifiers empty.
  // Our vocabulary must embed into `w` by name with equal kind and arity.
  PartialStructure expand(std::shared_ptr<const Vocabulary> w) const;

  // Drops inaccessible nodes (and any tuple touching them).
  PartialStructure restrict_accessible() const;

private:
  friend PartialStructure oplus(const std::vector<PartialStructure>& ss);

  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<uint8_t> alive_;
  uint32_t node_count_ = 0;
  NodeId next_node_ = 0;
  uint64_t size_ = 0;
  std::vector<detail::FuncInterp> funcs_; // indexed by IdIndex (functions)
  std::vector<detail::RelInterp> rels_;   // indexed by IdIndex (relations)

  bool counts_toward_size(IdIndex i) const {
    return !(vocab_->is_function(i) && vocab_->arity(i) == 0);
  }
};

// Tupling: disjoint union of structures over name-disjoint vocabularies.
// Each identifier keeps its interpretation on its origin universe and is
// empty elsewhere.
PartialStructure oplus(const std::vector<PartialStructure>& ss);

// Free term-structure T(t): one node per distinct sub-term of t, with the
// reserved token • denoting t itself. `vocab` must be purely functional;
// the result's vocabulary is `vocab` plus • (unless already present).
PartialStructure term_structure(const Term& t, const Vocabulary& vocab);

// Word structure T(w): |w|+1 nodes chained from the nil token, one pointer
// per alphabet character. `alphabet` maps characters to pointer names.
PartialStructure word_structure(
    const std::vector<std::pair<char, std::string>>& alphabet,
    const std::string& nil, const std::string& w);

// Reads a word structure back: follows the unique alphabet pointer chain
// from the nil token. Throws if the chain is ambiguous or nil undefined.
std::string word_decode(const PartialStructure& s,
                        const std::vector<std::pair<char, std::string>>& alphabet,
                        const std::string& nil);

} // namespace stv
