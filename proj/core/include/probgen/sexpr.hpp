#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "probgen/error.hpp"

namespace probgen {

/// A node of a parsed s-expression document: either an atom or a list.
///
/// Only the subset needed for signatures, terms, traces and stats dumps is
/// supported. Quoted symbols (`|...|`) and string literals are rejected with
/// `UnsupportedSyntax`.
struct SExpr {
  enum class Kind { Atom, List };

  Kind kind = Kind::Atom;
  std::string atom;
  std::vector<SExpr> items;
  SourceLocation where;

  bool is_atom() const noexcept { return kind == Kind::Atom; }
  bool is_list() const noexcept { return kind == Kind::List; }
  bool is_atom(std::string_view text) const noexcept {
    return is_atom() && atom == text;
  }
};

/// Reads every top-level s-expression in `text`. `;` starts a comment that
/// runs to the end of the line.
std::vector<SExpr> parse_sexprs(std::string_view text);

/// SMT-LIB simple symbol: letters, digits and `~!@$%^&*_-+=<>.?/`, not
/// starting with a digit.
bool is_simple_symbol(std::string_view text) noexcept;

/// Keyword atom such as `:effort`.
bool is_keyword(std::string_view text) noexcept;

std::string to_string(const SExpr& expr);

}  // namespace probgen
