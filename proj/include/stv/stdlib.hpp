#pragma once

#include <map>

#include "stv/ast.hpp"

namespace stv {

// Plain ST programs over word structures. Concatenation takes
// T(u) over {e,0,1} combined with T(v) over {eh,0h,1h}; multiplication takes
// T(n) over {z,s} combined with T(w) over {e,0,1}. Output reduct: {e,0,1}.
ProgramUnit gen_concat_splice();
ProgramUnit gen_concat_copy();
ProgramUnit gen_string_mult();

// Variant-annotated versions. Duplication maps T(w) over {e,0,1} to an
// expansion carrying a second copy of the word over {eb,0b,1b};
// exponentiation maps T(n) over {z,s} to the chain of length 2^n over {y,t}.
ProgramUnit gen_string_dup();
ProgramUnit gen_stv_concat();
ProgramUnit gen_stv_mult();
ProgramUnit gen_exponentiation();

struct EnumeratorWitness {
  std::string head_token;   // a: denotes the first enumerated node
  std::string succ_pointer; // e: enumeration successor
  std::string listed_set;   // E: unary relation of enumerated nodes
};

struct EnumeratorProgram {
  ProgramUnit unit;
  EnumeratorWitness witness;
};

// Expands any structure over `w` with a monotone enumerator of its
// accessible nodes.
EnumeratorProgram gen_enumerator(const Vocabulary& w);

struct QuasiInverseProgram {
  ProgramUnit unit;
  EnumeratorWitness enumerator;
  // function name -> per-argument-position inverse pointer names
  std::map<std::string, std::vector<std::string>> inverses;
};

// Expands any structure over `w` with quasi-inverses of every positive-arity
// function, built in tandem with an enumerator.
QuasiInverseProgram gen_quasi_inverse(const Vocabulary& w);

struct DuplicateFunctionsProgram {
  ProgramUnit unit;
  std::map<std::string, std::string> copies; // original -> duplicate name
};

// Expands any structure over `w` with a duplicate f' of every function f,
// agreeing with f on all tuples of accessible nodes.
DuplicateFunctionsProgram gen_duplicate_functions(const Vocabulary& w);

// CLI registry. Generators over a fixed vocabulary ignore `vocab`; the
// structure-expansion generators require it.
std::vector<std::string> stdlib_program_names();
ProgramUnit gen_by_name(const std::string& name, const Vocabulary* vocab);

} // namespace stv
