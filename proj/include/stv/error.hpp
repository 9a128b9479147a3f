#pragma once

#include <stdexcept>
#include <string>

namespace stv {

// Static errors: ill-sorted terms, unknown identifiers, arity mismatches,
// malformed input files. Runtime partiality is never an Error; it is
// represented by absent values.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace stv
