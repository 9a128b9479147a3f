#pragma once

#include <string>

#include "stv/structure.hpp"

namespace stv {

// Structure text format, one structure per file:
//   fn <name>/<arity>        vocabulary, declaration order is significant
//   rel <name>/<arity>
//   node <id>                universe (decimal naturals)
//   f (<id>,...) -> <id>     function entries; tokens as  f () -> <id>
//   R (<id>,...)             relation tuples
//   word nil=<tok> alpha=<c:ptr,...> "<string>"   whole-file shorthand
// Comments run from '%' to end of line. Whitespace-insensitive, UTF-8.
PartialStructure parse_structure(const std::string& text);

// Raw listing with the structure's own node ids.
std::string structure_to_text(const PartialStructure& s);

// Canonical encoding: accessible nodes relabelled in canonical order
// (ascending height, ties by minimal address under declaration order),
// inaccessible nodes discarded, entries sorted. Two structures have equal
// canonical forms iff their accessible parts are isomorphic (for the same
// vocabulary declaration order). The encoding parses back with
// parse_structure whenever the accessible part is non-empty.
std::string canonical_form(const PartialStructure& s);

bool canonical_equal(const PartialStructure& a, const PartialStructure& b);

} // namespace stv
