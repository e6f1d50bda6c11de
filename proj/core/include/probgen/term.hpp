#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "probgen/sexpr.hpp"

namespace probgen {

struct Sort {
  std::string name;

  friend auto operator<=>(const Sort&, const Sort&) = default;
};

struct SymbolDecl {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result_sort;

  std::size_t arity() const noexcept { return arg_sorts.size(); }
  bool is_constant() const noexcept { return arg_sorts.empty(); }

  friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

using SymbolPtr = std::shared_ptr<const SymbolDecl>;

/// Symbols keyed by name; iteration is lexicographic, which every sampling
/// routine relies on for seed determinism.
using SymbolSet = std::map<std::string, SymbolPtr, std::less<>>;

/// Monomorphic many-sorted signature. No overloading, no parametric sorts.
class Signature {
 public:
  void declare_sort(Sort sort);
  SymbolPtr declare_symbol(SymbolDecl decl);

  bool has_sort(std::string_view name) const;
  SymbolPtr find_symbol(std::string_view name) const;

  const std::set<Sort>& sorts() const noexcept { return sorts_; }
  const SymbolSet& symbols() const noexcept { return symbols_; }
  bool empty() const noexcept { return sorts_.empty() && symbols_.empty(); }

 private:
  std::set<Sort> sorts_;
  SymbolSet symbols_;
};

/// Immutable, well-sorted, variable-free term with structural equality.
///
/// Nodes are shared, so copies are cheap. `make` is the only way to build an
/// application and it rejects arity and sort disagreements, so a GroundTerm
/// is well-sorted by construction.
class GroundTerm {
 public:
  static GroundTerm make(SymbolPtr head, std::vector<GroundTerm> args = {});

  const SymbolDecl& head() const noexcept;
  const SymbolPtr& head_ptr() const noexcept;
  std::span<const GroundTerm> args() const noexcept;
  const Sort& sort() const noexcept { return head().result_sort; }
  bool is_constant() const noexcept { return args().empty(); }

  /// Edges on the longest root-to-leaf path; a constant has depth 0.
  std::size_t depth() const noexcept;
  std::size_t node_count() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const GroundTerm& lhs, const GroundTerm& rhs);

 private:
  struct Node;
  explicit GroundTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Signature parse_signature(std::string_view text);

/// Applies one `declare-sort`/`declare-fun`/`declare-const` command to `sig`.
/// Returns false if `expr` is not a declaration command.
bool apply_declaration(const SExpr& expr, Signature& sig);

GroundTerm parse_term(std::string_view text, const Signature& sig);
GroundTerm term_from_sexpr(const SExpr& expr, const Signature& sig);

std::string print_term(const GroundTerm& term);
std::ostream& operator<<(std::ostream& os, const GroundTerm& term);

/// Every symbol in `universe` whose result sort is `sort`, in name order.
std::vector<SymbolPtr> symbols_of_sort(const SymbolSet& universe, const Sort& sort);

/// Walks the tree and re-checks arity and argument sorts at every node.
bool is_well_sorted(const GroundTerm& term);

/// As `is_well_sorted`, and additionally every head is declared in `sig`
/// with an identical declaration.
bool is_well_sorted(const GroundTerm& term, const Signature& sig);

}  // namespace probgen

template <>
struct std::hash<probgen::GroundTerm> {
  std::size_t operator()(const probgen::GroundTerm& t) const noexcept {
    return t.hash();
  }
};
