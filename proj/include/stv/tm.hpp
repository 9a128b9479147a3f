#pragma once

#include <map>
#include <optional>

#include "stv/ast.hpp"
#include "stv/structure.hpp"

namespace stv {

// Single-tape Turing transducer. Symbols are single characters; the tape
// alphabet contains the input alphabet and the blank '_'. Reading a cell
// with no symbol edge is reading blank. The machine halts by entering the
// print state; a left move on the leftmost cell or (for machines declared
// partial) a missing transition leaves it stuck without output.
struct TuringTransducer {
  struct Action {
    std::string next_state;
    char write = '_';
    char move = 'S'; // L, R or S
  };

  std::vector<std::string> states;
  std::string start, print;
  std::vector<char> input_alphabet;
  std::vector<char> tape_alphabet; // includes '_'
  std::map<std::pair<std::string, char>, Action> delta;
  bool partial = false;
};

// File format:
//   states s,p       start s       print p
//   input 0,1        tape 0,1,_
//   delta s,0 -> s,1,R
//   partial          (optional: allow missing transitions)
TuringTransducer parse_tm(const std::string& text);

struct TMResult {
  enum class Kind : uint8_t { Printed, Stuck, Timeout } kind;
  std::string output; // Printed: tape from the left end to last non-blank
};

// Direct configuration-stepping simulation; the oracle compiled programs
// are tested against.
TMResult simulate_tm(const TuringTransducer& m, const std::string& input,
                     uint64_t fuel = 1u << 20);

struct CompiledTM {
  ProgramUnit unit;
  std::string nil; // input word structures chain from this token
  std::vector<std::pair<char, std::string>> io_alphabet;
  std::vector<std::pair<char, std::string>> tape_alphabet;
  std::vector<std::string> output_names; // nil + tape pointers
};

// Emits the simulating program: initialization (cursor, state flag and the
// backward pointer), the transition loop guarded on the print state being
// undefined, and output conversion stripping trailing blanks. Stuck
// machines detach the tape, leaving the empty word.
CompiledTM compile_tm(const TuringTransducer& m);

// Decodes a compiled run's output reduct back into a string.
std::string decode_tm_output(const CompiledTM& compiled,
                             const PartialStructure& out);

} // namespace stv
