#include "stv/structure.hpp"

#include <algorithm>
#include <map>

namespace stv {

namespace detail {

uint64_t pack2(NodeId a, NodeId b) {
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(b);
}

size_t VecHash::operator()(const std::vector<NodeId>& v) const {
  uint64_t h = 0x9e3779b97f4a7c15ull;
  for (NodeId x : v) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<size_t>(h);
}

std::optional<NodeId> FuncInterp::get(std::span<const NodeId> args) const {
  switch (arity_) {
    case 0:
      return tok_;
    case 1: {
      auto it = unary_.find(args[0]);
      if (it == unary_.end()) return std::nullopt;
      return it->second;
    }
    case 2: {
      auto it = binary_.find(pack2(args[0], args[1]));
      if (it == binary_.end()) return std::nullopt;
      return it->second;
    }
    default: {
      auto it = wide_.find(std::vector<NodeId>(args.begin(), args.end()));
      if (it == wide_.end()) return std::nullopt;
      return it->second;
    }
  }
}

bool FuncInterp::insert(std::span<const NodeId> args, NodeId val) {
  switch (arity_) {
    case 0:
      if (tok_) return false;
      tok_ = val;
      return true;
    case 1:
      return unary_.emplace(args[0], val).second;
    case 2:
      return binary_.emplace(pack2(args[0], args[1]), val).second;
    default:
      return wide_
          .emplace(std::vector<NodeId>(args.begin(), args.end()), val)
          .second;
  }
}

bool FuncInterp::erase(std::span<const NodeId> args) {
  switch (arity_) {
    case 0:
      if (!tok_) return false;
      tok_.reset();
      return true;
    case 1:
      return unary_.erase(args[0]) > 0;
    case 2:
      return binary_.erase(pack2(args[0], args[1])) > 0;
    default:
      return wide_.erase(std::vector<NodeId>(args.begin(), args.end())) > 0;
  }
}

uint64_t FuncInterp::count() const {
  switch (arity_) {
    case 0:
      return tok_ ? 1 : 0;
    case 1:
      return unary_.size();
    case 2:
      return binary_.size();
    default:
      return wide_.size();
  }
}

void FuncInterp::for_each(
    const std::function<void(const std::vector<NodeId>&, NodeId)>& fn) const {
  switch (arity_) {
    case 0:
      if (tok_) fn({}, *tok_);
      break;
    case 1:
      for (const auto& [a, v] : unary_) fn({a}, v);
      break;
    case 2:
      for (const auto& [k, v] : binary_)
        fn({static_cast<NodeId>(k >> 32), static_cast<NodeId>(k)}, v);
      break;
    default:
      for (const auto& [k, v] : wide_) fn(k, v);
      break;
  }
}

uint64_t FuncInterp::erase_node(NodeId n) {
  uint64_t removed = 0;
  switch (arity_) {
    case 0:
      if (tok_ && *tok_ == n) {
        tok_.reset();
        removed = 1;
      }
      break;
    case 1: {
      for (auto it = unary_.begin(); it != unary_.end();) {
        if (it->first == n || it->second == n) {
          it = unary_.erase(it);
          ++removed;
        } else {
          ++it;
        }
      }
      break;
    }
    case 2: {
      for (auto it = binary_.begin(); it != binary_.end();) {
        NodeId a = static_cast<NodeId>(it->first >> 32);
        NodeId b = static_cast<NodeId>(it->first);
        if (a == n || b == n || it->second == n) {
          it = binary_.erase(it);
          ++removed;
        } else {
          ++it;
        }
      }
      break;
    }
    default: {
      for (auto it = wide_.begin(); it != wide_.end();) {
        bool hit = it->second == n ||
                   std::find(it->first.begin(), it->first.end(), n) !=
                       it->first.end();
        if (hit) {
          it = wide_.erase(it);
          ++removed;
        } else {
          ++it;
        }
      }
      break;
    }
  }
  return removed;
}

void FuncInterp::clear() {
  tok_.reset();
  unary_.clear();
  binary_.clear();
  wide_.clear();
}

bool RelInterp::contains(std::span<const NodeId> args) const {
  switch (arity_) {
    case 0:
      return nullary_;
    case 1:
      return unary_.count(args[0]) > 0;
    case 2:
      return binary_.count(pack2(args[0], args[1])) > 0;
    default:
      return wide_.count(std::vector<NodeId>(args.begin(), args.end())) > 0;
  }
}

bool RelInterp::insert(std::span<const NodeId> args) {
  switch (arity_) {
    case 0: {
      bool was = nullary_;
      nullary_ = true;
      return !was;
    }
    case 1:
      return unary_.insert(args[0]).second;
    case 2:
      return binary_.insert(pack2(args[0], args[1])).second;
    default:
      return wide_.insert(std::vector<NodeId>(args.begin(), args.end())).second;
  }
}

bool RelInterp::erase(std::span<const NodeId> args) {
  switch (arity_) {
    case 0: {
      bool was = nullary_;
      nullary_ = false;
      return was;
    }
    case 1:
      return unary_.erase(args[0]) > 0;
    case 2:
      return binary_.erase(pack2(args[0], args[1])) > 0;
    default:
      return wide_.erase(std::vector<NodeId>(args.begin(), args.end())) > 0;
  }
}

uint64_t RelInterp::count() const {
  switch (arity_) {
    case 0:
      return nullary_ ? 1 : 0;
    case 1:
      return unary_.size();
    case 2:
      return binary_.size();
    default:
      return wide_.size();
  }
}

void RelInterp::for_each(
    const std::function<void(const std::vector<NodeId>&)>& fn) const {
  switch (arity_) {
    case 0:
      if (nullary_) fn({});
      break;
    case 1:
      for (NodeId a : unary_) fn({a});
      break;
    case 2:
      for (uint64_t k : binary_)
        fn({static_cast<NodeId>(k >> 32), static_cast<NodeId>(k)});
      break;
    default:
      for (const auto& k : wide_) fn(k);
      break;
  }
}

uint64_t RelInterp::erase_node(NodeId n) {
  uint64_t removed = 0;
  switch (arity_) {
    case 0:
      break; // no nodes in a nullary tuple
    case 1:
      removed = unary_.erase(n);
      break;
    case 2: {
      for (auto it = binary_.begin(); it != binary_.end();) {
        NodeId a = static_cast<NodeId>(*it >> 32);
        NodeId b = static_cast<NodeId>(*it);
        if (a == n || b == n) {
          it = binary_.erase(it);
          ++removed;
        } else {
          ++it;
        }
      }
      break;
    }
    default: {
      for (auto it = wide_.begin(); it != wide_.end();) {
        if (std::find(it->begin(), it->end(), n) != it->end()) {
          it = wide_.erase(it);
          ++removed;
        } else {
          ++it;
        }
      }
      break;
    }
  }
  return removed;
}

} // namespace detail

PartialStructure::PartialStructure(std::shared_ptr<const Vocabulary> vocab,
                                   uint32_t initial_nodes)
    : vocab_(std::move(vocab)) {
  if (!vocab_) throw Error("structure requires a vocabulary");
  funcs_.reserve(vocab_->count());
  rels_.reserve(vocab_->count());
  for (IdIndex i = 0; i < vocab_->count(); ++i) {
    funcs_.emplace_back(vocab_->arity(i));
    rels_.emplace_back(vocab_->arity(i));
  }
  for (uint32_t i = 0; i < initial_nodes; ++i) add_node();
}

std::vector<NodeId> PartialStructure::nodes() const {
  std::vector<NodeId> out;
  out.reserve(node_count_);
  for (NodeId n = 0; n < alive_.size(); ++n)
    if (alive_[n]) out.push_back(n);
  return out;
}

NodeId PartialStructure::add_node() {
  NodeId n = next_node_++;
  alive_.resize(next_node_, 0);
  alive_[n] = 1;
  ++node_count_;
  return n;
}

std::vector<std::pair<IdIndex, uint64_t>> PartialStructure::delete_node(
    NodeId n) {
  std::vector<std::pair<IdIndex, uint64_t>> removed;
  if (!alive(n)) return removed;
  for (IdIndex i = 0; i < vocab_->count(); ++i) {
    uint64_t k = vocab_->is_function(i) ? funcs_[i].erase_node(n)
                                        : rels_[i].erase_node(n);
    if (k > 0) {
      removed.emplace_back(i, k);
      if (counts_toward_size(i)) size_ -= k;
    }
  }
  alive_[n] = 0;
  --node_count_;
  return removed;
}

std::optional<NodeId> PartialStructure::func_get(
    IdIndex f, std::span<const NodeId> args) const {
  return funcs_[f].get(args);
}

bool PartialStructure::func_insert(IdIndex f, std::span<const NodeId> args,
                                   NodeId val) {
  bool added = funcs_[f].insert(args, val);
  if (added && counts_toward_size(f)) ++size_;
  return added;
}

bool PartialStructure::func_erase(IdIndex f, std::span<const NodeId> args) {
  bool removed = funcs_[f].erase(args);
  if (removed && counts_toward_size(f)) --size_;
  return removed;
}

bool PartialStructure::rel_contains(IdIndex r,
                                    std::span<const NodeId> args) const {
  return rels_[r].contains(args);
}

bool PartialStructure::rel_insert(IdIndex r, std::span<const NodeId> args) {
  bool added = rels_[r].insert(args);
  if (added) ++size_;
  return added;
}

bool PartialStructure::rel_erase(IdIndex r, std::span<const NodeId> args) {
  bool removed = rels_[r].erase(args);
  if (removed) --size_;
  return removed;
}

const detail::FuncInterp& PartialStructure::func(IdIndex f) const {
  if (!vocab_->is_function(f)) throw Error("not a function identifier");
  return funcs_[f];
}

const detail::RelInterp& PartialStructure::rel(IdIndex r) const {
  if (!vocab_->is_relation(r)) throw Error("not a relation identifier");
  return rels_[r];
}

std::optional<NodeId> PartialStructure::eval(const Term& t) const {
  if (t.head >= vocab_->count() || !vocab_->is_function(t.head) ||
      vocab_->arity(t.head) != t.args.size()) {
    validate_term(*vocab_, t); // throws with a precise message
  }
  size_t n = t.args.size();
  if (n <= 4) { // allocation-free path for any realistic arity
    NodeId vals[4];
    for (size_t i = 0; i < n; ++i) {
      auto v = eval(t.args[i]);
      if (!v) return std::nullopt;
      vals[i] = *v;
    }
    return funcs_[t.head].get(std::span<const NodeId>(vals, n));
  }
  std::vector<NodeId> vals;
  vals.reserve(n);
  for (const auto& a : t.args) {
    auto v = eval(a);
    if (!v) return std::nullopt;
    vals.push_back(*v);
  }
  return funcs_[t.head].get(vals);
}

AccessInfo PartialStructure::accessible() const {
  AccessInfo info;
  info.height.assign(next_node_, AccessInfo::kNoHeight);
  info.rank.assign(next_node_, AccessInfo::kNoRank);

  // Height 1: nodes denoted by tokens.
  std::vector<NodeId> frontier;
  for (IdIndex i = 0; i < vocab_->count(); ++i) {
    if (!vocab_->is_token(i)) continue;
    if (auto v = funcs_[i].get({})) {
      if (info.height[*v] == AccessInfo::kNoHeight) {
        info.height[*v] = 1;
        frontier.push_back(*v);
      }
    }
  }

  // Round h adds exactly the nodes of minimal height h+1: values of entries
  // whose arguments are all accessible with max height h.
  uint32_t h = 1;
  while (!frontier.empty()) {
    std::vector<NodeId> next;
    for (IdIndex i = 0; i < vocab_->count(); ++i) {
      if (!vocab_->is_function(i) || vocab_->arity(i) == 0) continue;
      funcs_[i].for_each([&](const std::vector<NodeId>& args, NodeId val) {
        if (info.height[val] != AccessInfo::kNoHeight) return;
        uint32_t mx = 0;
        for (NodeId a : args) {
          uint32_t ah = info.height[a];
          if (ah == AccessInfo::kNoHeight || ah > h) return;
          mx = std::max(mx, ah);
        }
        if (mx == h) {
          info.height[val] = h + 1;
          next.push_back(val);
        }
      });
    }
    // mx == h filters entries already realizable at a smaller height; those
    // values were added in an earlier round, so nothing is missed.
    frontier = std::move(next);
    ++h;
  }

  // Canonical order. Nodes of equal height are ranked by their minimal
  // address key: for height 1 the least token index denoting the node, and
  // for height h+1 the least (function index, arg ranks...) over entries
  // realizing the height. Keys are unique: equal keys name the same entry,
  // and an entry has one value.
  std::vector<std::vector<NodeId>> by_height;
  for (NodeId n = 0; n < next_node_; ++n) {
    uint32_t hh = info.height[n];
    if (hh == AccessInfo::kNoHeight) continue;
    if (by_height.size() < hh) by_height.resize(hh);
    by_height[hh - 1].push_back(n);
  }

  for (uint32_t level = 0; level < by_height.size(); ++level) {
    std::vector<std::pair<std::vector<uint32_t>, NodeId>> keyed;
    for (NodeId n : by_height[level]) {
      std::vector<uint32_t> best;
      if (level == 0) {
        for (IdIndex i = 0; i < vocab_->count(); ++i) {
          if (!vocab_->is_token(i)) continue;
          auto v = funcs_[i].get({});
          if (v && *v == n) {
            best = {i};
            break; // ascending identifier index: first hit is least
          }
        }
      } else {
        for (IdIndex i = 0; i < vocab_->count(); ++i) {
          if (!vocab_->is_function(i) || vocab_->arity(i) == 0) continue;
          funcs_[i].for_each([&](const std::vector<NodeId>& args, NodeId val) {
            if (val != n) return;
            uint32_t mx = 0;
            for (NodeId a : args) {
              uint32_t ah = info.height[a];
              if (ah == AccessInfo::kNoHeight ||
                  ah > level) // minimal-height realizers only
                return;
              mx = std::max(mx, ah);
            }
            if (mx != level) return;
            std::vector<uint32_t> key;
            key.reserve(args.size() + 1);
            key.push_back(i);
            for (NodeId a : args) key.push_back(info.rank[a]);
            if (best.empty() || key < best) best = std::move(key);
          });
        }
      }
      keyed.emplace_back(std::move(best), n);
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto& [key, n] : keyed) {
      info.rank[n] = static_cast<uint32_t>(info.order.size());
      info.order.push_back(n);
    }
  }
  return info;
}

bool PartialStructure::is_free() const {
  AccessInfo info = accessible();
  if (info.order.size() != node_count_) return false;
  // Exactly one defining entry per node: a token denoting it or a function
  // entry yielding it. Together with accessibility this forces unique
  // addresses (a cycle of defining entries would be inaccessible).
  std::vector<uint32_t> incoming(next_node_, 0);
  for (IdIndex i = 0; i < vocab_->count(); ++i) {
    if (!vocab_->is_function(i)) continue;
    funcs_[i].for_each([&](const std::vector<NodeId>&, NodeId val) {
      ++incoming[val];
    });
  }
  for (NodeId n : info.order)
    if (incoming[n] != 1) return false;
  return true;
}

PartialStructure PartialStructure::reduct(
    const std::vector<std::string>& names) const {
  auto nv = std::make_shared<Vocabulary>();
  std::vector<IdIndex> old_idx;
  for (const auto& nm : names) {
    IdIndex i = vocab_->require(nm);
    nv->add(nm, vocab_->kind(i), vocab_->arity(i));
    old_idx.push_back(i);
  }
  PartialStructure out(nv, 0);
  out.alive_ = alive_;
  out.node_count_ = node_count_;
  out.next_node_ = next_node_;
  for (IdIndex j = 0; j < old_idx.size(); ++j) {
    IdIndex i = old_idx[j];
    if (vocab_->is_function(i)) {
      funcs_[i].for_each([&](const std::vector<NodeId>& args, NodeId val) {
        out.func_insert(j, args, val);
      });
    } else {
      rels_[i].for_each([&](const std::vector<NodeId>& args) {
        out.rel_insert(j, args);
      });
    }
  }
  return out;
}

PartialStructure PartialStructure::rename(
    const std::unordered_map<std::string, std::string>& map) const {
  auto nv = std::make_shared<Vocabulary>();
  for (const auto& e : vocab_->entries()) {
    auto it = map.find(e.name);
    nv->add(it == map.end() ? e.name : it->second, e.kind, e.arity);
  }
  PartialStructure out(nv, 0);
  out.alive_ = alive_;
  out.node_count_ = node_count_;
  out.next_node_ = next_node_;
  out.size_ = size_;
  out.funcs_ = funcs_;
  out.rels_ = rels_;
  return out;
}

PartialStructure PartialStructure::expand(
    std::shared_ptr<const Vocabulary> w) const {
  for (const auto& e : vocab_->entries()) {
    auto i = w->find(e.name);
    if (!i) throw Error("expansion drops identifier '" + e.name + "'");
    if (w->kind(*i) != e.kind || w->arity(*i) != e.arity)
      throw Error("expansion conflicts on identifier '" + e.name + "'");
  }
  PartialStructure out(std::move(w), 0);
  out.alive_ = alive_;
  out.node_count_ = node_count_;
  out.next_node_ = next_node_;
  for (IdIndex i = 0; i < vocab_->count(); ++i) {
    IdIndex j = out.vocab_->require(vocab_->name(i));
    if (vocab_->is_function(i)) {
      funcs_[i].for_each([&](const std::vector<NodeId>& args, NodeId val) {
        out.func_insert(j, args, val);
      });
    } else {
      rels_[i].for_each([&](const std::vector<NodeId>& args) {
        out.rel_insert(j, args);
      });
    }
  }
  return out;
}

PartialStructure PartialStructure::restrict_accessible() const {
  AccessInfo info = accessible();
  PartialStructure out(vocab_, 0);
  out.alive_.assign(next_node_, 0);
  for (NodeId n : info.order) out.alive_[n] = 1;
  out.node_count_ = static_cast<uint32_t>(info.order.size());
  out.next_node_ = next_node_;
  for (IdIndex i = 0; i < vocab_->count(); ++i) {
    if (vocab_->is_function(i)) {
      funcs_[i].for_each([&](const std::vector<NodeId>& args, NodeId val) {
        for (NodeId a : args)
          if (!info.accessible(a)) return;
        if (!info.accessible(val)) return;
        out.func_insert(i, args, val);
      });
    } else {
      rels_[i].for_each([&](const std::vector<NodeId>& args) {
        for (NodeId a : args)
          if (!info.accessible(a)) return;
        out.rel_insert(i, args);
      });
    }
  }
  return out;
}

PartialStructure oplus(const std::vector<PartialStructure>& ss) {
  if (ss.empty()) throw Error("oplus of an empty list");
  auto nv = std::make_shared<Vocabulary>();
  for (const auto& s : ss)
    for (const auto& e : s.vocab().entries()) nv->add(e.name, e.kind, e.arity);

  PartialStructure out(nv, 0);
  NodeId base = 0;
  for (const auto& s : ss) {
    for (NodeId n = 0; n < s.next_node_; ++n) {
      NodeId m = out.add_node();
      (void)m;
      if (!s.alive_[n]) {
        // keep id spacing simple: dead slots become dead slots
        out.alive_[base + n] = 0;
        --out.node_count_;
      }
    }
    for (IdIndex i = 0; i < s.vocab().count(); ++i) {
      IdIndex j = nv->require(s.vocab().name(i));
      std::vector<NodeId> shifted;
      if (s.vocab().is_function(i)) {
        s.funcs_[i].for_each([&](const std::vector<NodeId>& args, NodeId val) {
          shifted.assign(args.begin(), args.end());
          for (NodeId& a : shifted) a += base;
          out.func_insert(j, shifted, val + base);
        });
      } else {
        s.rels_[i].for_each([&](const std::vector<NodeId>& args) {
          shifted.assign(args.begin(), args.end());
          for (NodeId& a : shifted) a += base;
          out.rel_insert(j, shifted);
        });
      }
    }
    base += s.next_node_;
  }
  return out;
}

namespace {

NodeId build_term_nodes(const Term& t, PartialStructure& s,
                        std::map<Term, NodeId, TermLess>& done) {
  auto it = done.find(t);
  if (it != done.end()) return it->second;
  std::vector<NodeId> argv;
  argv.reserve(t.args.size());
  for (const auto& a : t.args) argv.push_back(build_term_nodes(a, s, done));
  NodeId n;
  if (auto existing = s.func_get(t.head, argv)) {
    n = *existing;
  } else {
    n = s.add_node();
    s.func_insert(t.head, argv, n);
  }
  done.emplace(t, n);
  return n;
}

} // namespace

PartialStructure term_structure(const Term& t, const Vocabulary& vocab) {
  if (!vocab.purely_functional())
    throw Error("term structures require a purely functional vocabulary");
  validate_term(vocab, t);
  auto nv = std::make_shared<Vocabulary>();
  for (const auto& e : vocab.entries()) nv->add(e.name, e.kind, e.arity);
  if (!nv->find(kRootToken)) nv->add(kRootToken, IdKind::Function, 0);
  PartialStructure s(nv, 0);
  std::map<Term, NodeId, TermLess> done;
  NodeId root = build_term_nodes(t, s, done);
  s.func_insert(nv->require(kRootToken), {}, root);
  return s;
}

PartialStructure word_structure(
    const std::vector<std::pair<char, std::string>>& alphabet,
    const std::string& nil, const std::string& w) {
  auto nv = std::make_shared<Vocabulary>();
  nv->add(nil, IdKind::Function, 0);
  std::unordered_map<char, IdIndex> ptr;
  for (const auto& [c, name] : alphabet) {
    if (ptr.count(c)) throw Error("duplicate alphabet character");
    ptr[c] = nv->add(name, IdKind::Function, 1);
  }
  PartialStructure s(nv, 0);
  NodeId cur = s.add_node();
  s.func_insert(0, {}, cur);
  for (char c : w) {
    auto it = ptr.find(c);
    if (it == ptr.end())
      throw Error(std::string("character '") + c + "' outside alphabet");
    NodeId nxt = s.add_node();
    s.func_insert(it->second, {cur}, nxt);
    cur = nxt;
  }
  return s;
}

std::string word_decode(
    const PartialStructure& s,
    const std::vector<std::pair<char, std::string>>& alphabet,
    const std::string& nil) {
  const Vocabulary& v = s.vocab();
  auto cur = s.func_get(v.require(nil), {});
  if (!cur) throw Error("nil token undefined; not a word structure");
  std::vector<std::pair<char, IdIndex>> ptrs;
  for (const auto& [c, name] : alphabet) ptrs.emplace_back(c, v.require(name));
  std::string out;
  for (;;) {
    std::optional<char> step;
    NodeId next = kNoNode;
    for (const auto& [c, i] : ptrs) {
      if (auto t = s.func_get(i, {*cur})) {
        if (step) throw Error("ambiguous word structure: two pointers defined");
        step = c;
        next = *t;
      }
    }
    if (!step) return out;
    out += *step;
    cur = next;
    if (out.size() > s.node_count()) throw Error("cyclic word structure");
  }
}

} // namespace stv
