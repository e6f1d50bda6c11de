#include "probgen/stats.hpp"

#include <charconv>
#include <cmath>

namespace probgen {

Path Path::child(std::string_view head) const {
  Path out = *this;
  out.symbols.emplace_back(head);
  return out;
}

std::string to_string(const Path& path) {
  std::string out = "(";
  for (std::size_t i = 0; i < path.symbols.size(); ++i) {
    if (i != 0) out += ' ';
    out += path.symbols[i];
  }
  out += ')';
  return out;
}

// ---------------------------------------------------------------------------
// WeightVector

WeightVector::WeightVector(
    std::initializer_list<std::pair<const std::string, double>> init) {
  for (const auto& [name, weight] : init) set(name, weight);
}

void WeightVector::set(std::string name, double weight) {
  if (!std::isfinite(weight) || weight <= 0.0) {
    throw Error(ErrorCode::InvalidWeight, name + " -> " + std::to_string(weight));
  }
  entries_.insert_or_assign(std::move(name), weight);
}

double WeightVector::weight(std::string_view name) const {
  const auto it = entries_.find(name);
  return it == entries_.end() ? 0.0 : it->second;
}

double WeightVector::total() const noexcept {
  double sum = 0.0;
  for (const auto& [name, w] : entries_) sum += w;
  return sum;
}

// ---------------------------------------------------------------------------
// StatsStore

void StatsStore::observe(const GroundTerm& term) {
  Path path;
  observe_at(term, path);
  ++terms_observed_;
}

void StatsStore::observe_at(const GroundTerm& term, Path& path) {
  const SymbolDecl& head = term.head();
  ++global_[head.name];
  ++paths_[path][head.name];
  observed_.try_emplace(head.name, term.head_ptr());
  if (term.is_constant()) return;
  path.symbols.push_back(head.name);
  for (const GroundTerm& arg : term.args()) observe_at(arg, path);
  path.symbols.pop_back();
}

std::uint64_t StatsStore::global_count(std::string_view symbol) const {
  const auto it = global_.find(symbol);
  return it == global_.end() ? 0 : it->second;
}

std::uint64_t StatsStore::path_count(const Path& path, std::string_view symbol) const {
  const auto table = paths_.find(path);
  if (table == paths_.end()) return 0;
  const auto it = table->second.find(symbol);
  return it == table->second.end() ? 0 : it->second;
}

void StatsStore::add_occurrences(const Path& path, const SymbolPtr& symbol,
                                 std::uint64_t count) {
  if (count == 0) return;
  global_[symbol->name] += count;
  paths_[path][symbol->name] += count;
  observed_.try_emplace(symbol->name, symbol);
}

bool operator==(const StatsStore& lhs, const StatsStore& rhs) {
  if (lhs.global_ != rhs.global_ || lhs.paths_ != rhs.paths_ ||
      lhs.terms_observed_ != rhs.terms_observed_ ||
      lhs.observed_.size() != rhs.observed_.size()) {
    return false;
  }
  for (const auto& [name, decl] : lhs.observed_) {
    const auto it = rhs.observed_.find(name);
    if (it == rhs.observed_.end() || *it->second != *decl) return false;
  }
  return true;
}

StatsStore observe_term(StatsStore store, const GroundTerm& term) {
  store.observe(term);
  return store;
}

// ---------------------------------------------------------------------------
// Weight queries

WeightVector weights_global(const StatsStore& store,
                            std::span<const SymbolPtr> candidates) {
  WeightVector out;
  for (const SymbolPtr& s : candidates) {
    const std::uint64_t count = store.global_count(s->name);
    if (count > 0) out.set(s->name, static_cast<double>(count));
  }
  return out;
}

WeightVector weights_path(const StatsStore& store, const Path& path,
                          std::span<const SymbolPtr> candidates) {
  WeightVector out;
  const auto table = store.path_counts().find(path);
  for (const SymbolPtr& s : candidates) {
    std::uint64_t count = 0;
    if (table != store.path_counts().end()) {
      const auto it = table->second.find(s->name);
      if (it != table->second.end()) count = it->second;
    }
    out.set(s->name, count > 0 ? static_cast<double>(count) : 1.0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dump / load

namespace {

void append_counts(std::string& out, const CountTable& table) {
  for (const auto& [name, count] : table) {
    out += " (";
    out += name;
    out += ' ';
    out += std::to_string(count);
    out += ')';
  }
}

std::uint64_t parse_count(const SExpr& expr) {
  std::uint64_t value = 0;
  const std::string& s = expr.atom;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (!expr.is_atom() || s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::Malformed, "expected a count, got " + to_string(expr),
                expr.where);
  }
  return value;
}

}  // namespace

std::string dump_stats(const StatsStore& store) {
  std::string out = "(global";
  append_counts(out, store.global_counts());
  out += ")\n";
  for (const auto& [path, table] : store.path_counts()) {
    out += "(path ";
    out += to_string(path);
    append_counts(out, table);
    out += ")\n";
  }
  return out;
}

StatsStore load_stats(std::string_view text, const Signature& sig) {
  StatsStore store;
  CountTable declared_global;
  bool saw_global = false;
  for (const SExpr& expr : parse_sexprs(text)) {
    if (!expr.is_list() || expr.items.empty()) {
      throw Error(ErrorCode::Malformed, "expected (global ...) or (path ...)", expr.where);
    }
    auto pairs = std::span(expr.items).subspan(1);
    Path path;
    const bool is_path = expr.items.front().is_atom("path");
    if (is_path) {
      if (pairs.empty() || !pairs.front().is_list()) {
        throw Error(ErrorCode::Malformed, "path entry needs a symbol list", expr.where);
      }
      for (const SExpr& s : pairs.front().items) {
        if (!s.is_atom() || !sig.find_symbol(s.atom)) {
          throw Error(ErrorCode::UnknownSymbol, to_string(s), s.where);
        }
        path.symbols.push_back(s.atom);
      }
      pairs = pairs.subspan(1);
    } else if (expr.items.front().is_atom("global")) {
      if (saw_global) throw Error(ErrorCode::Malformed, "repeated (global ...)", expr.where);
      saw_global = true;
    } else {
      throw Error(ErrorCode::Malformed, "expected (global ...) or (path ...)", expr.where);
    }
    for (const SExpr& pair : pairs) {
      if (!pair.is_list() || pair.items.size() != 2 || !pair.items[0].is_atom()) {
        throw Error(ErrorCode::Malformed, "expected (<symbol> <count>)", pair.where);
      }
      const SymbolPtr symbol = sig.find_symbol(pair.items[0].atom);
      if (!symbol) {
        throw Error(ErrorCode::UnknownSymbol, pair.items[0].atom, pair.items[0].where);
      }
      const std::uint64_t count = parse_count(pair.items[1]);
      if (is_path) {
        store.add_occurrences(path, symbol, count);
      } else {
        declared_global[symbol->name] += count;
      }
    }
  }
  CountTable nonzero;
  for (const auto& [name, count] : declared_global) {
    if (count > 0) nonzero.emplace(name, count);
  }
  if (saw_global && nonzero != store.global_counts()) {
    throw Error(ErrorCode::Malformed, "global table disagrees with path tables");
  }
  return store;
}

std::uint64_t stats_digest(const StatsStore& store) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const char c : dump_stats(store)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace probgen
