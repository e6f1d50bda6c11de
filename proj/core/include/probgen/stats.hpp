#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "probgen/term.hpp"

namespace probgen {

/// Ancestor symbols of a term position, root first, excluding the node
/// itself. Argument indices are not recorded: in f(g(a,b)) both `a` and `b`
/// sit at path (f g). The root position is the empty path.
struct Path {
  std::vector<std::string> symbols;

  Path child(std::string_view head) const;
  bool is_root() const noexcept { return symbols.empty(); }

  friend auto operator<=>(const Path&, const Path&) = default;
};

std::string to_string(const Path& path);

using CountTable = std::map<std::string, std::uint64_t, std::less<>>;

/// Strictly positive weights keyed by symbol name, iterated in name order.
class WeightVector {
 public:
  using Entries = std::map<std::string, double, std::less<>>;

  WeightVector() = default;
  WeightVector(std::initializer_list<std::pair<const std::string, double>> init);

  /// Throws `InvalidWeight` unless `weight` is finite and > 0.
  void set(std::string name, double weight);

  double weight(std::string_view name) const;  // 0 when absent
  double total() const noexcept;
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const Entries& entries() const noexcept { return entries_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  Entries entries_;
};

/// Occurrence statistics over terms produced by other instantiation modules.
///
/// Invariant: for every symbol s, `global_counts()[s]` equals the sum over
/// paths p of `path_counts()[p][s]`.
class StatsStore {
 public:
  /// Counts every node of `term` (with multiplicity) under its path.
  void observe(const GroundTerm& term);

  const CountTable& global_counts() const noexcept { return global_; }
  const std::map<Path, CountTable>& path_counts() const noexcept { return paths_; }
  const SymbolSet& observed_symbols() const noexcept { return observed_; }
  std::uint64_t terms_observed() const noexcept { return terms_observed_; }

  std::uint64_t global_count(std::string_view symbol) const;
  std::uint64_t path_count(const Path& path, std::string_view symbol) const;

  /// Adds `count` occurrences of `symbol` at `path`; used when loading dumps.
  void add_occurrences(const Path& path, const SymbolPtr& symbol, std::uint64_t count);

  friend bool operator==(const StatsStore&, const StatsStore&);

 private:
  void observe_at(const GroundTerm& term, Path& path);

  CountTable global_;
  std::map<Path, CountTable> paths_;
  SymbolSet observed_;
  std::uint64_t terms_observed_ = 0;
};

/// Value-returning form of `StatsStore::observe`.
StatsStore observe_term(StatsStore store, const GroundTerm& term);

/// Global counts restricted to candidates that were observed. May be empty.
WeightVector weights_global(const StatsStore& store, std::span<const SymbolPtr> candidates);

/// Path-local counts for observed candidates, weight 1 for every other
/// candidate. Covers every candidate.
WeightVector weights_path(const StatsStore& store, const Path& path,
                          std::span<const SymbolPtr> candidates);

/// Byte-stable s-expression rendering:
///   (global (<sym> <count>)...)
///   (path (<sym>*) (<sym> <count>)...)   one line per path, sorted
std::string dump_stats(const StatsStore& store);

/// Inverse of `dump_stats`; symbols are resolved against `sig`. The
/// terms-observed counter is not part of a dump and loads as 0.
StatsStore load_stats(std::string_view text, const Signature& sig);

/// 64-bit FNV-1a of `dump_stats(store)`; identifies a stats snapshot.
std::uint64_t stats_digest(const StatsStore& store);

}  // namespace probgen
