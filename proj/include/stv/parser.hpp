#pragma once

#include <string>

#include "stv/ast.hpp"

namespace stv {

// Program file format:
//   vocab { fn e/0 fn 0/1 ... rel E/1 }
//   <statements>
// Statements are separated by ';'. Revisions:
//   f(a,..) <- b      function extension; tokens written  f <- b
//   drop f(a,..)      function contraction
//   R+(a,..) R-(a,..) relation extension / contraction
//   new c | del c     node inception / deletion
// Sugar, expanded during parsing with fresh tokens:
//   f(a,..) := b      the four-revision assignment
//   new f(a,..)       inception at a compound address
//   del f(a,..)       deletion at a compound address
// Control: if [G] {P} {Q};  do [G] {P};  do [G][f,g,..] {P}.
// Guards: def a | a == b | R(a,..) with not/and/or (not > and > or).
ProgramUnit parse_program_unit(const std::string& text);

// Parses a program body against a given vocabulary. Fresh tokens created by
// desugaring are added to the returned unit's vocabulary.
ProgramUnit parse_program(const std::string& text, const Vocabulary& vocab);

} // namespace stv
