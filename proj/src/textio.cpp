#include "stv/textio.hpp"

#include <algorithm>
#include <map>

#include "lex.hpp"

namespace stv {

using lex::Lexer;
using lex::Tok;

PartialStructure parse_structure(const std::string& text) {
  Lexer lx(text);

  if (lx.peek().kind == Tok::Word && lx.peek().text == "word") {
    lx.next();
    if (!lx.accept_word("nil")) lx.fail(lx.peek(), "expected nil=<token>");
    lx.expect(Tok::Equal, "'='");
    std::string nil = lx.expect_any_word("nil token name").text;
    if (!lx.accept_word("alpha")) lx.fail(lx.peek(), "expected alpha=<c:ptr,...>");
    lx.expect(Tok::Equal, "'='");
    std::vector<std::pair<char, std::string>> alphabet;
    for (;;) {
      auto c = lx.expect_any_word("alphabet character");
      if (c.text.size() != 1)
        lx.fail(c, "alphabet characters must be single characters");
      lx.expect(Tok::Colon, "':'");
      auto p = lx.expect_any_word("pointer name");
      alphabet.emplace_back(c.text[0], p.text);
      if (!lx.accept(Tok::Comma)) break;
    }
    auto w = lx.expect(Tok::Quoted, "quoted word");
    if (!lx.at_end()) lx.fail(lx.peek(), "trailing input after word shorthand");
    return word_structure(alphabet, nil, w.text);
  }

  auto vocab = std::make_shared<Vocabulary>();
  std::map<uint64_t, NodeId> node_map;
  // Entries are collected after the full declaration pass so that the
  // structure is created over the complete vocabulary.
  struct RawEntry {
    std::string name;
    std::vector<uint64_t> args;
    std::optional<uint64_t> val;
    uint32_t line;
  };
  std::vector<RawEntry> entries;
  std::vector<uint64_t> node_decls;

  // Directive words double as identifier names; the shape of what follows
  // disambiguates (declarations carry '/', node declarations a bare id,
  // entries a parenthesised tuple).
  auto is_decl = [&] {
    return (lx.peek().text == "fn" || lx.peek().text == "rel") &&
           lx.peek(1).kind == Tok::Word && lx.peek(2).kind == Tok::Slash;
  };
  auto is_node_decl = [&] {
    return lx.peek().text == "node" && lx.peek(1).kind == Tok::Word &&
           lex::is_natural(lx.peek(1).text);
  };
  while (!lx.at_end()) {
    if (is_decl()) {
      auto head = lx.next();
      auto nm = lx.expect_any_word("identifier name");
      lx.expect(Tok::Slash, "'/' before arity");
      uint64_t ar = lex::to_natural(lx.expect_any_word("arity"));
      vocab->add(nm.text,
                 head.text == "fn" ? IdKind::Function : IdKind::Relation,
                 static_cast<uint32_t>(ar));
      continue;
    }
    if (is_node_decl()) {
      lx.next();
      node_decls.push_back(lex::to_natural(lx.expect_any_word("node id")));
      continue;
    }
    {
      auto head = lx.expect_any_word("declaration or entry");
      RawEntry e;
      e.name = head.text;
      e.line = head.line;
      lx.expect(Tok::LParen, "'(' after identifier");
      if (lx.peek().kind != Tok::RParen) {
        for (;;) {
          e.args.push_back(lex::to_natural(lx.expect_any_word("node id")));
          if (!lx.accept(Tok::Comma)) break;
        }
      }
      lx.expect(Tok::RParen, "')'");
      if (lx.accept(Tok::Arrow))
        e.val = lex::to_natural(lx.expect_any_word("value node id"));
      entries.push_back(std::move(e));
    }
  }


  PartialStructure s(vocab, 0);
  for (uint64_t id : node_decls) {
    if (node_map.count(id)) throw Error("duplicate node " + std::to_string(id));
    node_map[id] = s.add_node();
  }
  if (s.node_count() == 0) throw Error("structure universe must be non-empty");

  auto lookup = [&](uint64_t id, uint32_t line) {
    auto it = node_map.find(id);
    if (it == node_map.end())
      throw Error("line " + std::to_string(line) + ": undeclared node " +
                  std::to_string(id));
    return it->second;
  };

  for (const auto& e : entries) {
    IdIndex i = vocab->require(e.name);
    if (vocab->arity(i) != e.args.size())
      throw Error("line " + std::to_string(e.line) + ": arity mismatch for '" +
                  e.name + "'");
    std::vector<NodeId> args;
    for (uint64_t a : e.args) args.push_back(lookup(a, e.line));
    if (vocab->is_function(i)) {
      if (!e.val)
        throw Error("line " + std::to_string(e.line) +
                    ": function entry needs '-> <id>'");
      if (!s.func_insert(i, args, lookup(*e.val, e.line)))
        throw Error("line " + std::to_string(e.line) +
                    ": duplicate entry for '" + e.name + "'");
    } else {
      if (e.val)
        throw Error("line " + std::to_string(e.line) +
                    ": relation tuple cannot have '->'");
      s.rel_insert(i, args);
    }
  }
  return s;
}

namespace {

void write_vocab(std::string& out, const Vocabulary& v) {
  for (const auto& e : v.entries()) {
    out += (e.kind == IdKind::Function) ? "fn " : "rel ";
    out += e.name;
    out += '/';
    out += std::to_string(e.arity);
    out += '\n';
  }
}

void write_interpretations(std::string& out, const PartialStructure& s,
                           const std::vector<NodeId>& label) {
  const Vocabulary& v = s.vocab();
  for (IdIndex i = 0; i < v.count(); ++i) {
    std::vector<std::pair<std::vector<NodeId>, NodeId>> fentries;
    std::vector<std::vector<NodeId>> rtuples;
    if (v.is_function(i)) {
      s.func(i).for_each([&](const std::vector<NodeId>& args, NodeId val) {
        std::vector<NodeId> a;
        for (NodeId x : args) {
          if (label[x] == kNoNode) return;
          a.push_back(label[x]);
        }
        if (label[val] == kNoNode) return;
        fentries.emplace_back(std::move(a), label[val]);
      });
      std::sort(fentries.begin(), fentries.end());
      for (const auto& [args, val] : fentries) {
        out += v.name(i);
        out += " (";
        for (size_t k = 0; k < args.size(); ++k) {
          if (k) out += ',';
          out += std::to_string(args[k]);
        }
        out += ") -> ";
        out += std::to_string(val);
        out += '\n';
      }
    } else {
      s.rel(i).for_each([&](const std::vector<NodeId>& args) {
        std::vector<NodeId> a;
        for (NodeId x : args) {
          if (label[x] == kNoNode) return;
          a.push_back(label[x]);
        }
        rtuples.push_back(std::move(a));
      });
      std::sort(rtuples.begin(), rtuples.end());
      for (const auto& args : rtuples) {
        out += v.name(i);
        out += " (";
        for (size_t k = 0; k < args.size(); ++k) {
          if (k) out += ',';
          out += std::to_string(args[k]);
        }
        out += ")\n";
      }
    }
  }
}

} // namespace

std::string structure_to_text(const PartialStructure& s) {
  std::string out;
  write_vocab(out, s.vocab());
  std::vector<NodeId> label(s.peak_node_id(), kNoNode);
  for (NodeId n : s.nodes()) {
    label[n] = n;
    out += "node " + std::to_string(n) + "\n";
  }
  write_interpretations(out, s, label);
  return out;
}

std::string canonical_form(const PartialStructure& s) {
  AccessInfo info = s.accessible();
  std::string out;
  write_vocab(out, s.vocab());
  std::vector<NodeId> label(s.peak_node_id(), kNoNode);
  for (size_t r = 0; r < info.order.size(); ++r) {
    label[info.order[r]] = static_cast<NodeId>(r);
    out += "node " + std::to_string(r) + "\n";
  }
  write_interpretations(out, s, label);
  return out;
}

bool canonical_equal(const PartialStructure& a, const PartialStructure& b) {
  return canonical_form(a) == canonical_form(b);
}

} // namespace stv
