#pragma once

#include <map>
#include <memory>

#include "stv/term.hpp"

namespace stv {

// A free algebra given by its constructors. Values are closed terms.
class FreeAlgebraSignature {
public:
  explicit FreeAlgebraSignature(
      std::vector<std::pair<std::string, uint32_t>> constructors);

  const std::vector<std::pair<std::string, uint32_t>>& constructors() const {
    return ctors_;
  }
  uint32_t arity_of(const std::string& name) const;
  bool is_constructor(const std::string& name) const;

  // Constructors as a purely functional vocabulary; algebra values are
  // terms over it.
  const std::shared_ptr<const Vocabulary>& vocab() const { return vocab_; }

private:
  std::vector<std::pair<std::string, uint32_t>> ctors_;
  std::shared_ptr<const Vocabulary> vocab_;
};

struct PRDefinition;
using PRDefPtr = std::shared_ptr<const PRDefinition>;

// Primitive-recursive function definitions over a free algebra:
// constructors, projections, composition, and recurrence with one step per
// constructor. A recurrence step for constructor c of arity k receives the
// arguments in the order (x_1..x_m, z_1..z_k, y_1..y_k) where the z are the
// constructor arguments and y_j the recursive results.
struct PRDefinition {
  enum class Kind : uint8_t { Constructor, Projection, Composition, Recurrence };
  Kind kind = Kind::Projection;
  uint32_t arity = 0;

  std::string ctor;                // Constructor
  uint32_t proj_index = 1;         // Projection, 1-based
  PRDefPtr comp_g;                 // Composition
  std::vector<PRDefPtr> comp_hs;
  std::vector<std::pair<std::string, PRDefPtr>> steps; // Recurrence, sig order
};

namespace prbuild {

PRDefPtr ctor(const FreeAlgebraSignature& sig, const std::string& c);
PRDefPtr proj(uint32_t index, uint32_t of_arity);
PRDefPtr comp(PRDefPtr g, std::vector<PRDefPtr> hs, uint32_t arity);
// steps must cover every constructor exactly once; m is the count of
// side arguments, so the resulting arity is 1 + m.
PRDefPtr rec(const FreeAlgebraSignature& sig,
             std::vector<std::pair<std::string, PRDefPtr>> steps, uint32_t m);

} // namespace prbuild

// Reference evaluation by direct recursion on terms; the independent oracle
// compiled programs are tested against.
Term eval_pr(const FreeAlgebraSignature& sig, const PRDefinition& def,
             const std::vector<Term>& args);

// Definition file format:
//   algebra { z/0 s/1 }
//   def add/2 = rec { z(x) => x; s(n,x)[y] => s(y) }
//   def double/1 = comp(add; p1, p1)
// Recurrence arm patterns list the constructor arguments first, then the
// side arguments; the bracket binds the recursive results. Projections are
// written p1, p2, ... and refer to the enclosing definition's arguments.
struct PRFile {
  FreeAlgebraSignature sig;
  std::vector<std::pair<std::string, PRDefPtr>> defs;
  PRDefPtr find(const std::string& name) const;
};

PRFile parse_pr_file(const std::string& text);

// Parses an algebra value like s(s(z)) against the signature.
Term parse_algebra_term(const FreeAlgebraSignature& sig,
                        const std::string& text);

} // namespace stv
