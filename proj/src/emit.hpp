#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stv/ast.hpp"

namespace stv::emit {

// Program fragments are emitted as concrete syntax and parsed afterwards;
// whitespace is irrelevant, the pretty printer regenerates layout.
using Stmts = std::vector<std::string>;

std::string join(const Stmts& body);
std::string block(const Stmts& body);
Stmts concat(std::initializer_list<Stmts> parts);

std::string app(const std::string& f, const std::vector<std::string>& args);
std::string if_else(const std::string& guard, const Stmts& then_branch,
                    const Stmts& else_branch);
std::string do_st(const std::string& guard, const Stmts& body);
std::string do_stv(const std::string& guard,
                   const std::vector<std::string>& variant, const Stmts& body);

// Fresh-name bookkeeping for one emitted program: a vocabulary mirror plus
// the declaration list for the header.
class Ctx {
public:
  // Imports existing identifiers (input vocabularies). Rejects names that
  // collide with the program keywords, which cannot be written in programs.
  void use(const Vocabulary& vocab);

  std::string fn(const std::string& hint, uint32_t arity);
  std::string rel(const std::string& hint, uint32_t arity);

  std::string header() const;
  ProgramUnit parse(const Stmts& body) const;

  const Vocabulary& vocab() const { return vocab_; }

private:
  Vocabulary vocab_;
  std::string decls_;
};

// cursor := head; body(cursor) per node; advance consuming `chain`.
// Visits every node of the chain including the head; leaves the chain
// empty along the walked path and the cursor undefined.
Stmts scan_consume(Ctx& ctx, const std::string& head_addr,
                   const std::string& chain, const std::string& cursor,
                   const Stmts& body_per_node);

// Copies the chain rooted at `root_addr` into every pointer in `copies`,
// consuming the original. No restore.
Stmts chain_copy_consume(Ctx& ctx, const std::string& root_addr,
                         const std::string& chain,
                         const std::vector<std::string>& copies,
                         const std::string& prefix);

// As above but preserves the original through a scratch copy.
Stmts chain_dup(Ctx& ctx, const std::string& root_addr,
                const std::string& chain,
                const std::vector<std::string>& copies,
                const std::string& prefix);

// Nested scans over all k-tuples of enumerated nodes: each level works on a
// fresh copy of the chain (re-duplicated per enclosing iteration), so the
// chain itself survives.
Stmts scan_tuples(Ctx& ctx, const std::string& head_tok,
                  const std::string& chain, uint32_t k,
                  const std::function<Stmts(const std::vector<std::string>&)>&
                      body_per_tuple,
                  const std::string& prefix);

struct EnumSpec {
  std::vector<std::string> tokens;                       // subset to seed from
  std::vector<std::pair<std::string, uint32_t>> funcs;   // positive arity
  bool with_inverses = false;
  bool restore_scanned = true; // copy consumed entries back at the end
  std::string prefix;          // name hint prefix for the auxiliaries
};

struct EnumNames {
  std::string head;  // token a: first enumerated node
  std::string chain; // pointer e: successor along the enumeration
  std::string set;   // unary relation E: enumerated so far
  std::string buf_root, buf_chain, flag, tail, buf_tail;
  std::map<std::string, std::vector<std::string>> inverses;
  std::map<std::string, std::string> shadows;
};

// The structure-expansion core: emits a program computing a monotone
// enumerator (head, chain) of the nodes accessible through the given
// tokens and functions, optionally extending quasi-inverses for each
// scanned function. Works breadth-first by address height; each productive
// round consumes at least one scanned-function entry (restored afterwards
// from shadows when restore_scanned), which is what lets the round loop
// carry the scanned functions as its variant.
EnumNames emit_enumerator(Ctx& ctx, Stmts& out, const EnumSpec& spec);

// Erases everything the enumerator built (chain, set, inverses, head and
// bookkeeping tokens), walking the chain destructively. Use before
// re-running an enumerator over the same names. `extra_per_node`, when
// given, contributes statements run at every chain node (cursor passed in),
// e.g. to erase site-local pointers keyed by enumerated nodes.
Stmts enum_reset(
    Ctx& ctx, const EnumNames& names,
    const std::function<Stmts(const std::string&)>& extra_per_node = {});

} // namespace stv::emit
