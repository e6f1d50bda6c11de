#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "probgen/generator.hpp"

namespace probgen {

/// Axes of a strategy grid. Flips multiply only the picks that use them.
struct GridSpec {
  std::vector<EffortMode> efforts;
  std::vector<PickStrategy> picks;
  std::vector<std::size_t> depths;
  std::vector<double> flips;

  /// 2 efforts x 3 picks x depths 0..4 x flips {0, .2, .5, .8, 1}: 110 points.
  static GridSpec paper();
};

/// Expands in (effort, pick, depth, flip) order. Throws `EmptyGridAxis`.
std::vector<GenConfig> enumerate_grid(const GridSpec& spec, std::uint64_t seed = 0,
                                      std::size_t batch_size = 20);

/// Expected size of `enumerate_grid(spec)` without expanding it.
std::size_t grid_size(const GridSpec& spec) noexcept;

/// e.g. `interleave-weights-d0-f0.5`, `lastcall-random-d3`.
std::string strategy_id(const GenConfig& cfg);
std::optional<GenConfig> parse_strategy_id(std::string_view id);

/// Strategy x problem solved table.
class ResultsMatrix {
 public:
  using SolvedSet = boost::dynamic_bitset<std::uint64_t>;

  /// Throws DuplicateProblem, DuplicateStrategy, RaggedRow or
  /// UnknownStrategy (for a reference that is not a strategy).
  ResultsMatrix(std::vector<std::string> problems, std::vector<std::string> strategies,
                std::vector<SolvedSet> solved,
                std::optional<std::string> reference = std::nullopt);

  const std::vector<std::string>& problems() const noexcept { return problems_; }
  const std::vector<std::string>& strategies() const noexcept { return strategies_; }
  const SolvedSet& solved(std::size_t strategy) const { return solved_.at(strategy); }
  bool solved(std::size_t strategy, std::size_t problem) const {
    return solved_.at(strategy).test(problem);
  }
  std::size_t solve_count(std::size_t strategy) const { return solved_.at(strategy).count(); }

  const std::optional<std::string>& reference() const noexcept { return reference_; }
  void set_reference(std::string id);
  std::optional<std::size_t> index_of(std::string_view strategy) const;

 private:
  std::vector<std::string> problems_;
  std::vector<std::string> strategies_;
  std::vector<SolvedSet> solved_;
  std::optional<std::string> reference_;
};

/// CSV with header `problem,<strategy>...`, one row per problem, cells 0/1.
/// A `#reference=<id>` line designates the reference; other `#` lines are
/// comments.
ResultsMatrix load_results(std::string_view csv_text);
std::string write_results(const ResultsMatrix& matrix);

struct AggregateRow {
  std::string strategy;
  std::size_t total = 0;
  std::size_t gained = 0;  // solved here, not by the reference
  std::size_t lost = 0;    // solved by the reference, not here
};

/// One row per strategy, reference included. Throws `NoReference`.
std::vector<AggregateRow> aggregate_vs_reference(const ResultsMatrix& matrix);

struct CoverRow {
  std::string strategy;
  std::size_t solves = 0;
  std::size_t added = 0;
  std::size_t total = 0;
  /// added / previous total; absent on the first row.
  std::optional<double> adds_fraction;
};

struct CoverOptions {
  std::optional<std::size_t> top;
  /// Keep placing strategies after the marginal gain drops to zero.
  bool exhaust = false;
};

/// Greedy complementarity order: each step takes the strategy with the most
/// not-yet-covered problems, ties broken by higher solo solves and then by
/// id. Stops on zero marginal gain unless `exhaust` is set.
std::vector<CoverRow> greedy_cover(const ResultsMatrix& matrix,
                                   const CoverOptions& options = {});

/// `added / prev_total` as a percentage with two decimals rounded half up,
/// computed exactly in integers, e.g. 141/3613 -> "3.90".
std::string format_adds_percent(std::size_t added, std::size_t prev_total);

}  // namespace probgen
