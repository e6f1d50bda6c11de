#include "probgen/term.hpp"

#include <algorithm>
#include <sstream>

#include <boost/container_hash/hash.hpp>

namespace probgen {

struct GroundTerm::Node {
  SymbolPtr head;
  std::vector<GroundTerm> args;
  std::size_t depth = 0;
  std::size_t node_count = 1;
  std::size_t hash = 0;
};

// ---------------------------------------------------------------------------
// Signature

void Signature::declare_sort(Sort sort) {
  if (sorts_.contains(sort)) {
    throw Error(ErrorCode::DuplicateDeclaration, sort.name);
  }
  sorts_.insert(std::move(sort));
}

SymbolPtr Signature::declare_symbol(SymbolDecl decl) {
  if (symbols_.contains(decl.name)) {
    throw Error(ErrorCode::DuplicateDeclaration, decl.name);
  }
  for (const Sort& s : decl.arg_sorts) {
    if (!sorts_.contains(s)) throw Error(ErrorCode::UndeclaredSort, s.name);
  }
  if (!sorts_.contains(decl.result_sort)) {
    throw Error(ErrorCode::UndeclaredSort, decl.result_sort.name);
  }
  auto ptr = std::make_shared<const SymbolDecl>(std::move(decl));
  symbols_.emplace(ptr->name, ptr);
  return ptr;
}

bool Signature::has_sort(std::string_view name) const {
  return sorts_.contains(Sort{std::string(name)});
}

SymbolPtr Signature::find_symbol(std::string_view name) const {
  const auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : it->second;
}

// ---------------------------------------------------------------------------
// GroundTerm

GroundTerm GroundTerm::make(SymbolPtr head, std::vector<GroundTerm> args) {
  if (!head) throw Error(ErrorCode::UnknownSymbol, "<null>");
  if (args.size() != head->arity()) {
    throw Error(ErrorCode::ArityMismatch,
                head->name + ", expected " + std::to_string(head->arity()) +
                    ", got " + std::to_string(args.size()));
  }
  auto node = std::make_shared<Node>();
  std::size_t seed = std::hash<std::string>{}(head->name);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].sort() != head->arg_sorts[i]) {
      throw Error(ErrorCode::SortMismatch,
                  head->name + "#" + std::to_string(i + 1) + ": expected " +
                      head->arg_sorts[i].name + ", got " + args[i].sort().name);
    }
    node->depth = std::max(node->depth, args[i].depth() + 1);
    node->node_count += args[i].node_count();
    boost::hash_combine(seed, args[i].hash());
  }
  node->hash = seed;
  node->head = std::move(head);
  node->args = std::move(args);
  return GroundTerm(std::move(node));
}

const SymbolDecl& GroundTerm::head() const noexcept { return *node_->head; }
const SymbolPtr& GroundTerm::head_ptr() const noexcept { return node_->head; }
std::span<const GroundTerm> GroundTerm::args() const noexcept { return node_->args; }
std::size_t GroundTerm::depth() const noexcept { return node_->depth; }
std::size_t GroundTerm::node_count() const noexcept { return node_->node_count; }
std::size_t GroundTerm::hash() const noexcept { return node_->hash; }

bool operator==(const GroundTerm& lhs, const GroundTerm& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  if (lhs.node_->hash != rhs.node_->hash) return false;
  if (lhs.node_->head != rhs.node_->head && *lhs.node_->head != *rhs.node_->head) {
    return false;
  }
  return lhs.node_->args == rhs.node_->args;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string require_symbol(const SExpr& expr, std::string_view what) {
  if (!expr.is_atom() || !is_simple_symbol(expr.atom)) {
    throw Error(ErrorCode::Malformed,
                std::string("expected ") + std::string(what) + ", got " + to_string(expr),
                expr.where);
  }
  return expr.atom;
}

Sort require_sort(const SExpr& expr, const Signature& sig) {
  Sort sort{require_symbol(expr, "sort name")};
  if (!sig.has_sort(sort.name)) {
    throw Error(ErrorCode::UndeclaredSort, sort.name, expr.where);
  }
  return sort;
}

void declare_at(const SExpr& expr, Signature& sig, SymbolDecl decl) {
  if (sig.find_symbol(decl.name)) {
    throw Error(ErrorCode::DuplicateDeclaration, decl.name, expr.where);
  }
  sig.declare_symbol(std::move(decl));
}

// `path` lists the (head, 1-based argument index) pairs leading to `expr`.
GroundTerm build_term(const SExpr& expr, const Signature& sig, std::string& path) {
  const SExpr* head_expr = &expr;
  std::span<const SExpr> arg_exprs;
  if (expr.is_list()) {
    if (expr.items.empty()) {
      throw Error(ErrorCode::Malformed, "empty application", expr.where);
    }
    head_expr = &expr.items.front();
    arg_exprs = std::span(expr.items).subspan(1);
    if (arg_exprs.empty()) {
      throw Error(ErrorCode::Malformed,
                  "constant in parentheses: " + to_string(expr), expr.where);
    }
  }
  const std::string name = require_symbol(*head_expr, "symbol");
  SymbolPtr head = sig.find_symbol(name);
  if (!head) throw Error(ErrorCode::UnknownSymbol, name, head_expr->where);
  if (head->arity() != arg_exprs.size()) {
    throw Error(ErrorCode::ArityMismatch,
                name + ", expected " + std::to_string(head->arity()) + ", got " +
                    std::to_string(arg_exprs.size()),
                head_expr->where);
  }
  std::vector<GroundTerm> args;
  args.reserve(arg_exprs.size());
  for (std::size_t i = 0; i < arg_exprs.size(); ++i) {
    const std::size_t mark = path.size();
    if (!path.empty()) path += '/';
    path += name + "#" + std::to_string(i + 1);
    GroundTerm arg = build_term(arg_exprs[i], sig, path);
    if (arg.sort() != head->arg_sorts[i]) {
      throw Error(ErrorCode::SortMismatch,
                  "at " + path + ": expected " + head->arg_sorts[i].name +
                      ", got " + arg.sort().name,
                  arg_exprs[i].where);
    }
    path.resize(mark);
    args.push_back(std::move(arg));
  }
  return GroundTerm::make(std::move(head), std::move(args));
}

}  // namespace

bool apply_declaration(const SExpr& expr, Signature& sig) {
  if (!expr.is_list() || expr.items.empty() || !expr.items.front().is_atom()) {
    return false;
  }
  const std::string& cmd = expr.items.front().atom;
  const auto& items = expr.items;
  if (cmd == "declare-sort") {
    if (items.size() != 3) {
      throw Error(ErrorCode::Malformed, "expected (declare-sort <name> 0)", expr.where);
    }
    Sort sort{require_symbol(items[1], "sort name")};
    if (!items[2].is_atom() || items[2].atom.empty() ||
        !std::all_of(items[2].atom.begin(), items[2].atom.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorCode::Malformed, "sort arity must be a numeral", items[2].where);
    }
    if (items[2].atom != "0") {
      throw Error(ErrorCode::ParametricSort, sort.name + " " + items[2].atom,
                  items[2].where);
    }
    if (sig.has_sort(sort.name)) {
      throw Error(ErrorCode::DuplicateDeclaration, sort.name, items[1].where);
    }
    sig.declare_sort(std::move(sort));
    return true;
  }
  if (cmd == "declare-fun") {
    if (items.size() != 4 || !items[2].is_list()) {
      throw Error(ErrorCode::Malformed,
                  "expected (declare-fun <name> (<sort>*) <sort>)", expr.where);
    }
    SymbolDecl decl;
    decl.name = require_symbol(items[1], "symbol name");
    for (const SExpr& s : items[2].items) decl.arg_sorts.push_back(require_sort(s, sig));
    decl.result_sort = require_sort(items[3], sig);
    declare_at(items[1], sig, std::move(decl));
    return true;
  }
  if (cmd == "declare-const") {
    if (items.size() != 3) {
      throw Error(ErrorCode::Malformed, "expected (declare-const <name> <sort>)",
                  expr.where);
    }
    SymbolDecl decl;
    decl.name = require_symbol(items[1], "symbol name");
    decl.result_sort = require_sort(items[2], sig);
    declare_at(items[1], sig, std::move(decl));
    return true;
  }
  return false;
}

Signature parse_signature(std::string_view text) {
  Signature sig;
  for (const SExpr& expr : parse_sexprs(text)) {
    if (!apply_declaration(expr, sig)) {
      throw Error(ErrorCode::Malformed, "expected a declaration, got " + to_string(expr),
                  expr.where);
    }
  }
  return sig;
}

GroundTerm term_from_sexpr(const SExpr& expr, const Signature& sig) {
  std::string path;
  return build_term(expr, sig, path);
}

GroundTerm parse_term(std::string_view text, const Signature& sig) {
  const std::vector<SExpr> exprs = parse_sexprs(text);
  if (exprs.size() != 1) {
    throw Error(ErrorCode::Malformed,
                "expected exactly one term, got " + std::to_string(exprs.size()),
                exprs.size() > 1 ? exprs[1].where : SourceLocation{});
  }
  return term_from_sexpr(exprs.front(), sig);
}

// ---------------------------------------------------------------------------
// Printing and queries

namespace {

void print_to(std::string& out, const GroundTerm& term) {
  if (term.is_constant()) {
    out += term.head().name;
    return;
  }
  out += '(';
  out += term.head().name;
  for (const GroundTerm& arg : term.args()) {
    out += ' ';
    print_to(out, arg);
  }
  out += ')';
}

}  // namespace

std::string print_term(const GroundTerm& term) {
  std::string out;
  print_to(out, term);
  return out;
}

std::ostream& operator<<(std::ostream& os, const GroundTerm& term) {
  return os << print_term(term);
}

std::vector<SymbolPtr> symbols_of_sort(const SymbolSet& universe, const Sort& sort) {
  std::vector<SymbolPtr> out;
  for (const auto& [name, decl] : universe) {
    if (decl->result_sort == sort) out.push_back(decl);
  }
  return out;
}

bool is_well_sorted(const GroundTerm& term) {
  const SymbolDecl& head = term.head();
  if (term.args().size() != head.arity()) return false;
  std::size_t depth = 0;
  for (std::size_t i = 0; i < term.args().size(); ++i) {
    const GroundTerm& arg = term.args()[i];
    if (arg.sort() != head.arg_sorts[i] || !is_well_sorted(arg)) return false;
    depth = std::max(depth, arg.depth() + 1);
  }
  return depth == term.depth();
}

bool is_well_sorted(const GroundTerm& term, const Signature& sig) {
  const SymbolPtr declared = sig.find_symbol(term.head().name);
  if (!declared || *declared != term.head()) return false;
  if (!is_well_sorted(term)) return false;
  return std::all_of(term.args().begin(), term.args().end(),
                     [&](const GroundTerm& arg) { return is_well_sorted(arg, sig); });
}

}  // namespace probgen
