#pragma once

#include <array>
#include <optional>

#include "stv/ast.hpp"
#include "stv/structure.hpp"

namespace stv {

// One record per completed pass of an STV loop. `variant_removed` counts
// actual tuple removals from the loop's variant components during the pass,
// whether by contraction revisions or node-deletion side effects; the loop
// is re-entered only when it is positive.
struct PassRecord {
  const Program* loop = nullptr;
  uint64_t pass = 0; // 1-based within one activation of the loop
  uint64_t variant_removed = 0;
  uint64_t variant_size_at_entry = 0;
};

struct Trace {
  // Configurations entered: revisions applied + guard evaluations + 1.
  uint64_t steps = 1;
  uint64_t revisions = 0;
  uint64_t guard_evals = 0;
  uint64_t max_size = 0;
  std::array<uint64_t, 6> revisions_by_kind{}; // indexed by Revision::Kind
  std::vector<PassRecord> passes;              // only when logging passes
};

struct Outcome {
  bool halted = false; // false: fuel exhausted
  PartialStructure final_structure;
  Trace trace;
};

struct RunOptions {
  std::optional<uint64_t> fuel; // in revisions + guard evaluations
  bool log_passes = false;
  // called after each applied revision with (revision ordinal, kind, size)
  std::function<void(uint64_t, Revision::Kind, uint64_t)> on_revision;
};

// Test and guard evaluation over a structure. Tests are strict: any
// undefined address makes an equation or relational test false; `def` is
// the only definedness probe.
bool eval_test(const PartialStructure& s, const Test& t);
bool eval_guard(const PartialStructure& s, const Guard& g);

// Pure single-revision application (the run loop mutates in place).
PartialStructure apply_revision(const PartialStructure& s, const Revision& r);

// Expands the input to the unit's vocabulary and executes the program.
Outcome run(const ProgramUnit& unit, const PartialStructure& input,
            const RunOptions& opts = {});

// Runs, then restricts the final structure to `output_names` and to the
// nodes accessible in that reduct. Throws Error on fuel exhaustion.
PartialStructure run_transducer(const ProgramUnit& unit,
                                const PartialStructure& input,
                                const std::vector<std::string>& output_names,
                                const RunOptions& opts = {});

} // namespace stv
