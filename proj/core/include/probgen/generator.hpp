#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "probgen/rng.hpp"
#include "probgen/stats.hpp"
#include "probgen/term.hpp"

namespace probgen {

enum class PickStrategy { Random, Weights, Paths };
enum class EffortMode { LastCall, Interleave };

/// Where candidate head symbols come from.
enum class Universe {
  Observed,   // symbols seen in other modules' instantiations
  Signature,  // every declared symbol
};

std::string_view to_string(PickStrategy pick) noexcept;
std::string_view to_string(EffortMode effort) noexcept;
std::string_view to_string(Universe universe) noexcept;
PickStrategy parse_pick(std::string_view text);
EffortMode parse_effort_mode(std::string_view text);
Universe parse_universe(std::string_view text);

bool uses_flip(PickStrategy pick) noexcept;

/// One strategy of the generator: a single point of the evaluation grid.
struct GenConfig {
  PickStrategy pick = PickStrategy::Weights;
  std::size_t depth = 0;
  /// Inversion probability per pick. Absent and 0.0 behave identically; it
  /// has no effect for PickStrategy::Random.
  std::optional<double> flip;
  EffortMode effort = EffortMode::LastCall;
  std::uint64_t seed = 0;
  std::size_t batch_size = 20;

  double effective_flip() const noexcept;
  /// Throws `InvalidConfig` for flip outside [0,1], a flip on Random, or a
  /// zero batch size.
  void validate() const;

  friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

/// Entry-wise reciprocal.
WeightVector invert_weights(const WeightVector& weights);

/// Draws u in [0, total) and returns the first entry, in name order, whose
/// running prefix sum exceeds u. Throws `EmptyWeightVector`.
const std::string& sample_categorical(const WeightVector& weights, Rng& rng);

/// Selects a head symbol among `candidates` (sorted by name) according to
/// `cfg.pick`. With Weights or Paths, one flip draw is made per call and a
/// successful draw inverts the whole weight vector for this call only.
/// Throws `NoSymbolsForSort` on an empty candidate list.
SymbolPtr pick(const GenConfig& cfg, std::span<const SymbolPtr> candidates,
               const StatsStore& store, const Path& path, Rng& rng);

/// Random ground term of sort `sort` with depth <= cfg.depth, built top-down
/// from symbols of `universe`. At the depth limit only constants are
/// eligible.
///
/// Throws `NoSymbolsForSort` if some required sort has no symbol and
/// `NoConstant` if the depth limit leaves no constant of a required sort.
GroundTerm make_term(const Sort& sort, const GenConfig& cfg, const StatsStore& store,
                     const SymbolSet& universe, Rng& rng);

/// make_term over `store.observed_symbols()`.
GroundTerm make_term(const Sort& sort, const GenConfig& cfg, const StatsStore& store,
                     Rng& rng);

struct Batch {
  Sort sort;
  std::vector<GroundTerm> terms;  // distinct, in first-generation order
  std::optional<std::string> diagnostic;

  bool failed() const noexcept { return diagnostic.has_value(); }
};

/// cfg.batch_size calls to make_term with duplicates removed. Generation
/// failures do not throw: they yield an empty batch carrying a diagnostic.
Batch generate_batch(const Sort& sort, const GenConfig& cfg, const StatsStore& store,
                     const SymbolSet& universe, Rng& rng);
Batch generate_batch(const Sort& sort, const GenConfig& cfg, const StatsStore& store,
                     Rng& rng);

}  // namespace probgen
