#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "probgen/replay.hpp"

namespace probgen {
namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(PROBGEN_DATA_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

constexpr std::string_view kTwoRounds = R"(
  (declare-sort S 0)
  (declare-fun f (S) S)
  (declare-const a S)
  (quantifier q (S))
  (round :effort standard :lemma true (inst q (f a)))
  (round :effort lastcall :lemma false (inst q a))
)";

TEST(ParseTrace, TwoRounds) {
  const Trace trace = parse_trace(kTwoRounds);
  ASSERT_EQ(trace.quantifiers.size(), 1u);
  EXPECT_EQ(trace.quantifiers[0].id, "q");
  EXPECT_EQ(trace.quantifiers[0].bound_sorts, (std::vector<Sort>{{"S"}}));
  ASSERT_EQ(trace.rounds.size(), 2u);
  EXPECT_EQ(trace.rounds[0].effort_reached, EffortLevel::Standard);
  EXPECT_TRUE(trace.rounds[0].lemma_produced_by_others);
  ASSERT_EQ(trace.rounds[0].observed.size(), 1u);
  EXPECT_EQ(print_term(trace.rounds[0].observed[0].terms[0]), "(f a)");
  EXPECT_EQ(trace.rounds[1].effort_reached, EffortLevel::LastCall);
  EXPECT_FALSE(trace.rounds[1].lemma_produced_by_others);
}

TEST(ParseTrace, NoRoundsIsValid) {
  const Trace trace = parse_trace("(declare-sort S 0)(quantifier q (S S))");
  EXPECT_TRUE(trace.rounds.empty());
  EXPECT_EQ(trace.quantifiers.size(), 1u);
  EXPECT_TRUE(parse_trace("").rounds.empty());
}

ErrorCode trace_error(std::string_view text) {
  try {
    parse_trace(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error for " << text;
  return ErrorCode::Malformed;
}

TEST(ParseTrace, Errors) {
  const std::string head = "(declare-sort S 0)(declare-sort T 0)(declare-const a S)(quantifier q (S))";
  EXPECT_EQ(trace_error(head + "(round :effort bogus :lemma true)"), ErrorCode::BadEffortLevel);
  EXPECT_EQ(trace_error(head + "(round :effort model :lemma true (inst r a))"),
            ErrorCode::UnknownQuantifier);
  EXPECT_EQ(trace_error(head + "(round :effort model :lemma maybe)"), ErrorCode::Malformed);
  EXPECT_EQ(trace_error(head + "(round :lemma true)"), ErrorCode::Malformed);
  EXPECT_EQ(trace_error(head + "(round :effort model :lemma true (inst q a a))"),
            ErrorCode::ArityMismatch);
  EXPECT_EQ(trace_error(head + "(round :effort model :lemma true (inst q zz))"),
            ErrorCode::UnknownSymbol);
  EXPECT_EQ(trace_error("(declare-sort S 0)(declare-sort T 0)(declare-const t T)(quantifier q (S))"
                        "(round :effort model :lemma true (inst q t))"),
            ErrorCode::SortMismatch);
  EXPECT_EQ(trace_error(head + "(quantifier q (S))"), ErrorCode::DuplicateDeclaration);
  EXPECT_EQ(trace_error("(declare-sort S 0)(quantifier q (U))"), ErrorCode::UndeclaredSort);
  EXPECT_EQ(trace_error(head + "(round :effort model :lemma true)(quantifier r (S))"),
            ErrorCode::Malformed);
  EXPECT_EQ(trace_error(head + "(declare-const b S)"), ErrorCode::Malformed);
}

TEST(ParseTrace, BadEffortLevelCarriesLocation) {
  try {
    parse_trace("(declare-sort S 0)\n(round :effort bogus :lemma true)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadEffortLevel);
    EXPECT_EQ(e.detail(), "bogus");
    ASSERT_TRUE(e.where());
    EXPECT_EQ(*e.where(), (SourceLocation{2, 16}));
  }
}

TEST(ParseTrace, ExtendsBaseSignature) {
  const Signature base = parse_signature("(declare-sort S 0)(declare-const a S)");
  const Trace trace = parse_trace("(declare-const b S)(quantifier q (S))", base);
  EXPECT_TRUE(trace.signature.find_symbol("a"));
  EXPECT_TRUE(trace.signature.find_symbol("b"));
}

TEST(ShouldFire, Examples) {
  EXPECT_FALSE(should_fire(EffortMode::LastCall, EffortLevel::Standard, true));
  EXPECT_TRUE(should_fire(EffortMode::Interleave, EffortLevel::Standard, true));
  EXPECT_FALSE(should_fire(EffortMode::Interleave, EffortLevel::Conflict, false));
  EXPECT_TRUE(should_fire(EffortMode::LastCall, EffortLevel::LastCall, false));
  EXPECT_FALSE(should_fire(EffortMode::LastCall, EffortLevel::LastCall, true));
}

TEST(ShouldFire, InterleaveFiresWheneverLastCallDoes) {
  for (int level = 0; level < 4; ++level) {
    for (bool lemma : {false, true}) {
      const auto reached = static_cast<EffortLevel>(level);
      if (should_fire(EffortMode::LastCall, reached, lemma)) {
        EXPECT_TRUE(should_fire(EffortMode::Interleave, reached, lemma));
      }
    }
  }
}

TEST(RunSession, SoleConstantFillsTheBatch) {
  const Trace trace = parse_trace(R"(
    (declare-sort S 0) (declare-const a S) (quantifier q (S))
    (round :effort lastcall :lemma false (inst q a)))");
  GenConfig cfg;
  cfg.effort = EffortMode::LastCall;
  cfg.depth = 0;
  const SessionReport report = run_session(trace, cfg);
  ASSERT_EQ(report.rounds.size(), 1u);
  const RoundReport& round = report.rounds[0];
  EXPECT_TRUE(round.fired);
  ASSERT_EQ(round.batches.size(), 1u);
  EXPECT_EQ(round.batches[0].sort, Sort{"S"});
  ASSERT_EQ(round.batches[0].terms.size(), 1u);
  EXPECT_EQ(print_term(round.batches[0].terms[0]), "a");
}

TEST(RunSession, LastCallNeverFiresWhenOthersProduceLemmas) {
  const Trace trace = parse_trace(R"(
    (declare-sort S 0) (declare-const a S) (quantifier q (S))
    (round :effort lastcall :lemma true (inst q a))
    (round :effort standard :lemma true (inst q a))
    (round :effort model :lemma true))");
  GenConfig cfg;
  cfg.effort = EffortMode::LastCall;
  const SessionReport report = run_session(trace, cfg);
  EXPECT_EQ(report.fired_rounds(), 0u);
  for (const RoundReport& r : report.rounds) EXPECT_TRUE(r.batches.empty());
  EXPECT_EQ(report.rounds.back().stats_terms, 2u);
}

TEST(RunSession, OneBatchPerDistinctSortPerFiredRound) {
  const Trace trace = parse_trace(read_data("sample.trace"));
  for (const EffortMode mode : {EffortMode::LastCall, EffortMode::Interleave}) {
    GenConfig cfg;
    cfg.effort = mode;
    cfg.pick = PickStrategy::Paths;
    cfg.depth = 2;
    cfg.flip = 0.5;
    cfg.seed = 3;
    const SessionReport report = run_session(trace, cfg);
    ASSERT_EQ(report.rounds.size(), trace.rounds.size());
    for (std::size_t k = 0; k < report.rounds.size(); ++k) {
      const RoundReport& r = report.rounds[k];
      EXPECT_EQ(r.fired, should_fire(mode, trace.rounds[k]));
      if (!r.fired) {
        EXPECT_TRUE(r.batches.empty());
        continue;
      }
      std::set<Sort> sorts;
      for (const Batch& b : r.batches) {
        EXPECT_TRUE(sorts.insert(b.sort).second) << "two batches for " << b.sort.name;
        EXPECT_LE(b.terms.size(), cfg.batch_size);
      }
      EXPECT_EQ(sorts, (std::set<Sort>{{"S"}, {"T"}}));
    }
  }
}

TEST(RunSession, InterleaveFiresOnSupersetOfLastCallRounds) {
  const Trace trace = parse_trace(read_data("sample.trace"));
  GenConfig last;
  last.effort = EffortMode::LastCall;
  GenConfig inter = last;
  inter.effort = EffortMode::Interleave;
  const SessionReport a = run_session(trace, last);
  const SessionReport b = run_session(trace, inter);
  for (std::size_t k = 0; k < a.rounds.size(); ++k) {
    if (a.rounds[k].fired) EXPECT_TRUE(b.rounds[k].fired);
  }
  EXPECT_GT(b.fired_rounds(), a.fired_rounds());
}

TEST(RunSession, DeterministicReports) {
  const Trace trace = parse_trace(read_data("sample.trace"));
  GenConfig cfg;
  cfg.effort = EffortMode::Interleave;
  cfg.pick = PickStrategy::Weights;
  cfg.depth = 3;
  cfg.flip = 0.8;
  cfg.seed = 2025;
  EXPECT_EQ(report_to_sexpr(run_session(trace, cfg)), report_to_sexpr(run_session(trace, cfg)));
}

TEST(RunSession, PrefixReplayReproducesBatches) {
  const std::string full = read_data("sample.trace");
  const Trace trace = parse_trace(full);
  GenConfig cfg;
  cfg.effort = EffortMode::Interleave;
  cfg.pick = PickStrategy::Paths;
  cfg.depth = 2;
  cfg.flip = 0.2;
  cfg.seed = 10;
  const SessionReport whole = run_session(trace, cfg);
  for (std::size_t k = 1; k <= trace.rounds.size(); ++k) {
    Trace prefix = trace;
    prefix.rounds.resize(k);
    const SessionReport part = run_session(prefix, cfg);
    const RoundReport& x = whole.rounds[k - 1];
    const RoundReport& y = part.rounds.back();
    ASSERT_EQ(x.batches.size(), y.batches.size());
    for (std::size_t i = 0; i < x.batches.size(); ++i) {
      EXPECT_EQ(x.batches[i].sort, y.batches[i].sort);
      EXPECT_EQ(x.batches[i].terms, y.batches[i].terms);
    }
    EXPECT_EQ(x.stats_digest, y.stats_digest);
  }
}

TEST(RunSession, ObservationsPrecedeGenerationWithinARound) {
  const Trace trace = parse_trace(R"(
    (declare-sort S 0) (declare-const a S) (declare-const b S) (quantifier q (S))
    (round :effort lastcall :lemma false (inst q b)))");
  const SessionReport report = run_session(trace, GenConfig{});
  ASSERT_EQ(report.rounds[0].batches.size(), 1u);
  EXPECT_EQ(print_term(report.rounds[0].batches[0].terms.at(0)), "b");
}

TEST(RunSession, GeneratedTermsAreNotLearnedByDefault) {
  const Trace trace = parse_trace(read_data("sample.trace"));
  GenConfig cfg;
  cfg.effort = EffortMode::Interleave;
  const SessionReport plain = run_session(trace, cfg);
  ReplayOptions feedback;
  feedback.observe_generated = true;
  const SessionReport fed = run_session(trace, cfg, feedback);

  std::uint64_t observed = 0;
  for (const Round& r : trace.rounds) {
    for (const InstRecord& inst : r.observed) observed += inst.terms.size();
  }
  EXPECT_EQ(plain.rounds.back().stats_terms, observed);
  EXPECT_GT(fed.rounds.back().stats_terms, observed);
}

TEST(RunSession, UnsupportedSortYieldsDiagnosticNotAbort) {
  const Trace trace = parse_trace(R"(
    (declare-sort S 0) (declare-sort T 0) (declare-const a S)
    (quantifier q (S T))
    (round :effort lastcall :lemma false))");
  const SessionReport report = run_session(trace, GenConfig{});
  ASSERT_EQ(report.rounds[0].batches.size(), 2u);
  for (const Batch& b : report.rounds[0].batches) {
    EXPECT_TRUE(b.failed()) << b.sort.name;  // nothing observed yet
  }
  const std::string text = report_to_sexpr(report);
  EXPECT_NE(text.find(":diagnostic \"NoSymbolsForSort(S)\""), std::string::npos) << text;
}

TEST(RunSession, ShuffleOnlyReordersSorts) {
  const Trace trace = parse_trace(R"(
    (declare-sort S 0) (declare-sort T 0) (declare-const a S) (declare-const t T)
    (quantifier p (T)) (quantifier q (S))
    (round :effort standard :lemma false (inst p t) (inst q a)))");
  std::set<std::vector<std::string>> orders;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenConfig cfg;
    cfg.effort = EffortMode::Interleave;
    cfg.seed = seed;
    const SessionReport report = run_session(trace, cfg);
    std::vector<std::string> order;
    for (const Batch& b : report.rounds[0].batches) order.push_back(b.sort.name);
    std::vector<std::string> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<std::string>{"S", "T"}));
    orders.insert(order);
  }
  EXPECT_EQ(orders.size(), 2u);
}

}  // namespace
}  // namespace probgen
