#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>

#include "stv/ast.hpp"
#include "stv/interp.hpp"

namespace stv {

using BigNat = boost::multiprecision::cpp_int;

struct StvViolation {
  SourceLoc loop;
  std::string what;
  SourceLoc at;
};

struct StvReport {
  bool ok = true;
  std::vector<StvViolation> violations;
};

// Terminating-variant validation: a program is STV iff every loop carries a
// variant of positive-arity identifiers none of which is the eigen
// identifier of an extension anywhere in the loop body, and no unannotated
// loop occurs.
StvReport check_stv(const Program& p, const Vocabulary& vocab);
inline StvReport check_stv(const ProgramUnit& unit) {
  return check_stv(unit.body, *unit.vocab);
}

// Size-bound expressions: monotone inflationary functions on naturals.
struct BoundFunction {
  enum class Kind : uint8_t { Id, Succ, Const, Compose, Max, Iter };
  Kind kind = Kind::Id;
  uint64_t konst = 0;               // Const
  std::vector<BoundFunction> kids;  // Compose: {outer, inner}; Max: 2; Iter: 1

  bool operator==(const BoundFunction&) const = default;
};

// Which base case to use for single revisions. Repaired is the default:
// extensions and inceptions map to n+1 and everything else to n, which is
// what the output-size bound theorem needs. Literal keeps the constant base
// case (1 for extension/inception, 0 otherwise) for diagnostics; it is
// falsified by a single extension.
enum class BoundBase : uint8_t { Repaired, Literal };

// Structural size bound of an STV program. Throws on non-STV programs
// (unannotated loops).
BoundFunction bound(const Program& p, BoundBase base = BoundBase::Repaired);
inline BoundFunction bound(const ProgramUnit& unit,
                           BoundBase base = BoundBase::Repaired) {
  return bound(unit.body, base);
}

std::string bound_to_string(const BoundFunction& b); // prefix notation

struct EvalBudget {
  uint64_t max_bits = 1u << 16; // values above 2^max_bits overflow
  uint64_t max_iterations = 2'000'000;
  uint64_t max_work = 50'000'000; // expression-node visits
};

struct BoundValue {
  std::optional<BigNat> exact; // absent when the budget was exceeded
  // Largest value seen along the evaluation. Bound functions are monotone
  // and inflationary, so this is a sound lower bound of the true value even
  // when the budget ran out.
  BigNat lower_bound = 0;
};

// Evaluates by recursion; Iter(b) at n unrolls b n times starting from n
// (zero iterations at n = 0). Bounds grow as fast as any primitive-
// recursive function, so exceeding the budget is a value here, not a
// failure; the lower bound stays meaningful.
BoundValue eval_bound(const BoundFunction& b, const BigNat& n,
                      const EvalBudget& budget = {});

struct BoundCheckResult {
  uint64_t inputs_checked = 0;
  std::vector<std::string> falsifications;
  bool ok() const { return falsifications.empty(); }
};

// Runs the program on every input and checks size(output) <= b(size(input))
// as well as max trace size <= b(size(input)); an overflowing bound value
// exceeds any representable structure size and passes. Any violated
// instance is reported.
BoundCheckResult check_pr_bound(const ProgramUnit& unit,
                                const std::vector<PartialStructure>& inputs,
                                const EvalBudget& budget = {});

// The check/bound reports rendered for the CLI (JSON).
std::string stv_report_json(const StvReport& r);
std::string bound_report_json(const BoundFunction& b,
                              const std::vector<uint64_t>& samples,
                              const EvalBudget& budget = {});

} // namespace stv
