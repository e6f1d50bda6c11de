#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "probgen/generator.hpp"
#include "probgen/stats.hpp"
#include "probgen/term.hpp"

namespace probgen {

/// Scheduling tiers of the host solver, in increasing order of effort.
enum class EffortLevel { Conflict = 0, Standard = 1, Model = 2, LastCall = 3 };

std::string_view to_string(EffortLevel level) noexcept;
EffortLevel parse_effort_level(std::string_view text);  // throws BadEffortLevel

/// One lemma Q -> phi[x := t] made by another module: the quantifier and
/// the tuple of ground terms substituted for its bound variables.
struct InstRecord {
  std::string quantifier_id;
  std::vector<GroundTerm> terms;
};

struct Round {
  EffortLevel effort_reached = EffortLevel::Conflict;
  bool lemma_produced_by_others = false;
  std::vector<InstRecord> observed;
};

struct QuantifierDecl {
  std::string id;
  std::vector<Sort> bound_sorts;
};

struct Trace {
  Signature signature;
  std::vector<QuantifierDecl> quantifiers;
  std::vector<Round> rounds;
};

/// Parses a trace document: declarations, then `(quantifier <id> (<sort>*))`
/// forms, then `(round :effort <level> :lemma <bool> (inst <id> <term>*)*)`
/// forms. Declarations are added on top of `base`.
Trace parse_trace(std::string_view text, Signature base = {});

/// lastcall: only when the round reached last-call effort and no other
/// module produced a lemma. interleave: from standard effort upward.
bool should_fire(EffortMode mode, EffortLevel reached, bool lemma_produced_by_others) noexcept;
bool should_fire(EffortMode mode, const Round& round) noexcept;

struct ReplayOptions {
  Universe universe = Universe::Observed;
  /// Feed this module's own batches back into the statistics. Off by
  /// default: only other modules' instantiations are learned from.
  bool observe_generated = false;
};

struct RoundReport {
  std::size_t index = 0;  // 1-based
  EffortLevel effort_reached = EffortLevel::Conflict;
  bool lemma_produced_by_others = false;
  bool fired = false;
  std::size_t observed_terms = 0;
  std::uint64_t stats_terms = 0;   // cumulative terms observed
  std::uint64_t stats_digest = 0;  // see stats_digest()
  std::vector<Batch> batches;      // one per distinct sort, in encounter order
};

struct SessionReport {
  GenConfig config;
  ReplayOptions options;
  std::vector<RoundReport> rounds;

  std::size_t fired_rounds() const noexcept;
};

/// Replays `trace` round by round. Observations of a round are learned
/// before this module decides whether to fire in that round. Every round
/// that fires shuffles the quantifier list with the session stream and
/// generates one fresh batch per distinct bound-variable sort.
SessionReport run_session(const Trace& trace, const GenConfig& cfg,
                          const ReplayOptions& options = {});

/// S-expression rendering of a session report; byte-stable.
std::string report_to_sexpr(const SessionReport& report);

}  // namespace probgen
