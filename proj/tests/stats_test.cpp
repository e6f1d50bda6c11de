#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "probgen/stats.hpp"
#include "test_support.hpp"

namespace probgen {
namespace {

class StatsTest : public ::testing::Test {
 protected:
  Signature sig = parse_signature(R"(
    (declare-sort S 0)
    (declare-fun f (S) S) (declare-fun g (S S) S)
    (declare-const a S) (declare-const b S) (declare-const c S))");

  GroundTerm term(std::string_view text) const { return parse_term(text, sig); }
  std::vector<SymbolPtr> candidates(std::initializer_list<const char*> names) const {
    std::vector<SymbolPtr> out;
    for (const char* n : names) out.push_back(sig.find_symbol(n));
    return out;
  }
};

TEST_F(StatsTest, PathTableOfRunningExample) {
  const StatsStore store = observe_term(StatsStore{}, term("(f (g a b))"));
  EXPECT_EQ(store.global_counts(), (CountTable{{"a", 1}, {"b", 1}, {"f", 1}, {"g", 1}}));
  const std::map<Path, CountTable> expected{
      {Path{}, {{"f", 1}}},
      {Path{{"f"}}, {{"g", 1}}},
      {Path{{"f", "g"}}, {{"a", 1}, {"b", 1}}},
  };
  EXPECT_EQ(store.path_counts(), expected);
  EXPECT_EQ(store.terms_observed(), 1u);
  EXPECT_EQ(store.observed_symbols().size(), 4u);
}

TEST_F(StatsTest, RepeatedObservationsAccumulate) {
  StatsStore store;
  store.observe(term("a"));
  store.observe(term("a"));
  EXPECT_EQ(store.global_counts(), (CountTable{{"a", 2}}));
  EXPECT_EQ(store.path_counts(), (std::map<Path, CountTable>{{Path{}, {{"a", 2}}}}));
  EXPECT_EQ(store.terms_observed(), 2u);
}

TEST_F(StatsTest, SiblingPositionsShareOnePath) {
  const StatsStore store = observe_term(StatsStore{}, term("(g a a)"));
  EXPECT_EQ(store.path_count(Path{{"g"}}, "a"), 2u);
}

TEST_F(StatsTest, WeightsGlobalRestrictsToObservedCandidates) {
  StatsStore store;
  for (const char* t : {"a", "a", "a", "b", "(f c)", "(f c)"}) store.observe(term(t));
  // a:3 b:1 c:2 f:2
  EXPECT_EQ(weights_global(store, candidates({"a", "b"})), (WeightVector{{"a", 3}, {"b", 1}}));

  StatsStore unseen;
  unseen.observe(term("a"));
  EXPECT_TRUE(weights_global(unseen, candidates({"c"})).empty());

  StatsStore counted;
  for (const char* t : {"(f a)", "(f a)", "(f b)"}) counted.observe(term(t));
  EXPECT_EQ(weights_global(counted, candidates({"a", "b"})), (WeightVector{{"a", 2}, {"b", 1}}));
}

TEST_F(StatsTest, WeightsPathPadsWithDefaultOne) {
  const StatsStore store = observe_term(StatsStore{}, term("(f (g a b))"));
  EXPECT_EQ(weights_path(store, Path{{"f", "g"}}, candidates({"a", "b", "c"})),
            (WeightVector{{"a", 1}, {"b", 1}, {"c", 1}}));
  EXPECT_EQ(weights_path(store, Path{{"nowhere"}}, candidates({"a", "b"})),
            (WeightVector{{"a", 1}, {"b", 1}}));

  StatsStore counted;
  for (const char* t : {"(g a a)", "(g b c)"}) counted.observe(term(t));
  // (g): a:2 b:1 c:1
  EXPECT_EQ(weights_path(counted, Path{{"g"}}, candidates({"a", "b"})),
            (WeightVector{{"a", 2}, {"b", 1}}));
}

TEST_F(StatsTest, WeightVectorRejectsNonPositiveWeights) {
  WeightVector w;
  EXPECT_THROW(w.set("a", 0.0), Error);
  EXPECT_THROW(w.set("a", -1.0), Error);
  EXPECT_THROW(w.set("a", std::numeric_limits<double>::infinity()), Error);
  w.set("a", 0.5);
  EXPECT_DOUBLE_EQ(w.total(), 0.5);
}

TEST_F(StatsTest, DumpIsSortedAndStable) {
  StatsStore store;
  store.observe(term("(f (g a b))"));
  store.observe(term("b"));
  EXPECT_EQ(dump_stats(store),
            "(global (a 1) (b 2) (f 1) (g 1))\n"
            "(path () (b 1) (f 1))\n"
            "(path (f) (g 1))\n"
            "(path (f g) (a 1) (b 1))\n");
  EXPECT_EQ(dump_stats(StatsStore{}), "(global)\n");
}

TEST_F(StatsTest, LoadInvertsDump) {
  StatsStore store;
  for (const char* t : {"(f (g a b))", "(g (f c) (f (f a)))", "c"}) store.observe(term(t));
  const StatsStore loaded = load_stats(dump_stats(store), sig);
  EXPECT_EQ(dump_stats(loaded), dump_stats(store));
  EXPECT_EQ(loaded.global_counts(), store.global_counts());
  EXPECT_EQ(loaded.path_counts(), store.path_counts());
  EXPECT_EQ(loaded.observed_symbols().size(), store.observed_symbols().size());
}

TEST_F(StatsTest, LoadRejectsInconsistentGlobalTable) {
  EXPECT_THROW(load_stats("(global (a 2))\n(path () (a 1))\n", sig), Error);
  EXPECT_THROW(load_stats("(path () (zz 1))\n", sig), Error);
  EXPECT_THROW(load_stats("(path () (a x))\n", sig), Error);
}

// Recomputes the global table from the path tables.
CountTable fold_paths(const StatsStore& store) {
  CountTable out;
  for (const auto& [path, table] : store.path_counts()) {
    for (const auto& [name, count] : table) out[name] += count;
  }
  return out;
}

TEST(StatsProperties, RefinementMonotonicityAndOrderInsensitivity) {
  const Signature sig = testing::rich_signature();
  std::mt19937_64 rng(77);
  std::vector<GroundTerm> terms;
  for (int i = 0; i < 500; ++i) {
    terms.push_back(testing::random_term(sig, Sort{i % 3 ? "S" : "T"}, i % 5, rng));
  }

  StatsStore store;
  for (const GroundTerm& t : terms) {
    const StatsStore before = store;
    store.observe(t);
    for (const auto& [name, count] : before.global_counts()) {
      ASSERT_GE(store.global_count(name), count);
    }
    for (const auto& [name, count] : store.global_counts()) {
      ASSERT_GT(count, 0u);
      ASSERT_TRUE(store.observed_symbols().contains(name));
    }
  }
  EXPECT_EQ(fold_paths(store), store.global_counts());
  EXPECT_EQ(store.terms_observed(), 500u);

  std::shuffle(terms.begin(), terms.end(), rng);
  StatsStore shuffled;
  for (const GroundTerm& t : terms) shuffled.observe(t);
  EXPECT_EQ(shuffled, store);
  EXPECT_EQ(stats_digest(shuffled), stats_digest(store));
}

TEST(StatsProperties, WeightQueriesCoverCandidates) {
  const Signature sig = testing::rich_signature();
  std::mt19937_64 rng(5);
  StatsStore store;
  for (int i = 0; i < 50; ++i) store.observe(testing::random_term(sig, Sort{"S"}, 3, rng));
  const std::vector<SymbolPtr> all = symbols_of_sort(sig.symbols(), Sort{"S"});
  for (const auto& [path, table] : store.path_counts()) {
    const WeightVector w = weights_path(store, path, all);
    ASSERT_EQ(w.size(), all.size());
  }
  const WeightVector g = weights_global(store, all);
  for (const auto& [name, weight] : g.entries()) {
    EXPECT_TRUE(std::any_of(all.begin(), all.end(),
                            [&](const SymbolPtr& s) { return s->name == name; }));
    EXPECT_EQ(weight, static_cast<double>(store.global_count(name)));
  }
}

}  // namespace
}  // namespace probgen
