#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lowdefect/errors.hpp"

namespace lowdefect {

// Minimal s-expression reader used by the tree and covering file formats.
struct SExpr {
  bool is_atom = false;
  bool quoted = false;  // atom was written as a "..." string
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  const SExpr& at(std::size_t i) const {
    if (is_atom || i >= items.size())
      throw ParseError("expected a longer list", line, column);
    return items[i];
  }
  // First atom of a list, the list's tag.
  std::string_view tag() const {
    if (is_atom || items.empty() || !items[0].is_atom) return {};
    return items[0].atom;
  }
};

// Parses exactly one s-expression (trailing whitespace allowed).
SExpr parse_sexpr(std::string_view text);

}  // namespace lowdefect
