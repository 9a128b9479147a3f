#pragma once

#include <string>

#include "stv/ast.hpp"

namespace stv {

std::string guard_to_string(const Vocabulary& vocab, const Guard& g);
std::string revision_to_string(const Vocabulary& vocab, const Revision& r);

// Canonical concrete syntax; parse_program(pretty_print_body(p)) == p.
std::string pretty_print_body(const Vocabulary& vocab, const Program& p);

// Full program file with its vocab header.
std::string pretty_print(const ProgramUnit& unit);

} // namespace stv
