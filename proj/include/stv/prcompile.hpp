#pragma once

#include "stv/ast.hpp"
#include "stv/prdef.hpp"
#include "stv/structure.hpp"

namespace stv {

// A compiled definition of arity n expects as input the combination
// T(w) ⊕ T(x1) ⊕ ... ⊕ T(x_{n-1}): the first argument over the declared
// constructor names with the reserved root token, later arguments over
// per-position renamings (c -> c_x<i>, root -> •_x<i>). The output reduct
// `output_names` holds T(f(args)) over fresh output constructor names.
struct CompiledPR {
  ProgramUnit unit;
  std::vector<std::string> input_roots;
  std::vector<std::unordered_map<std::string, std::string>> input_renames;
  std::map<std::string, std::string> output_constructors; // orig -> emitted
  std::string output_root;
  std::vector<std::string> output_names; // reduct, constructor order + root

  // orig constructor names + reserved root, for canonical comparisons
  std::unordered_map<std::string, std::string> output_to_input() const;
};

CompiledPR compile_pr(const FreeAlgebraSignature& sig, const PRDefinition& def);

// Builds the combined input structure for a compiled program.
PartialStructure make_pr_input(const FreeAlgebraSignature& sig,
                               const CompiledPR& compiled,
                               const std::vector<Term>& args);

// Runs the compiled program and returns the output as a structure over the
// original constructor names + reserved root token (directly comparable to
// term_structure of the expected value).
PartialStructure run_compiled_pr(const CompiledPR& compiled,
                                 const FreeAlgebraSignature& sig,
                                 const std::vector<Term>& args,
                                 std::optional<uint64_t> fuel = {});

// Budget instrumentation: runs an enumerator over the program's vocabulary
// to obtain the node count n as a numeral chain, computes T(f(n)) with the
// compiled definition (f unary over {z/0, s/1}), duplicates the resulting
// chain once per loop of `p`, and annotates each loop of `p` with its copy
// as variant, preceding each body with one contraction of that copy. The
// transformed program is variant-annotated regardless of p's shape; with a
// dominating budget it computes the same transformation as p.
ProgramUnit bound_transform(const ProgramUnit& p, const PRDefinition& f_def,
                            const FreeAlgebraSignature& nat_sig);

} // namespace stv
