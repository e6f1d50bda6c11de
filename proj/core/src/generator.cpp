#include "probgen/generator.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace probgen {

std::string_view to_string(PickStrategy pick) noexcept {
  switch (pick) {
    case PickStrategy::Random: return "random";
    case PickStrategy::Weights: return "weights";
    case PickStrategy::Paths: return "paths";
  }
  return "?";
}

std::string_view to_string(EffortMode effort) noexcept {
  switch (effort) {
    case EffortMode::LastCall: return "lastcall";
    case EffortMode::Interleave: return "interleave";
  }
  return "?";
}

std::string_view to_string(Universe universe) noexcept {
  return universe == Universe::Observed ? "observed" : "signature";
}

PickStrategy parse_pick(std::string_view text) {
  if (text == "random") return PickStrategy::Random;
  if (text == "weights") return PickStrategy::Weights;
  if (text == "paths") return PickStrategy::Paths;
  throw Error(ErrorCode::InvalidConfig, "pick " + std::string(text));
}

EffortMode parse_effort_mode(std::string_view text) {
  if (text == "lastcall") return EffortMode::LastCall;
  if (text == "interleave") return EffortMode::Interleave;
  throw Error(ErrorCode::InvalidConfig, "effort " + std::string(text));
}

Universe parse_universe(std::string_view text) {
  if (text == "observed") return Universe::Observed;
  if (text == "signature") return Universe::Signature;
  throw Error(ErrorCode::InvalidConfig, "universe " + std::string(text));
}

bool uses_flip(PickStrategy pick) noexcept { return pick != PickStrategy::Random; }

double GenConfig::effective_flip() const noexcept {
  return uses_flip(pick) ? flip.value_or(0.0) : 0.0;
}

void GenConfig::validate() const {
  if (flip) {
    if (!(*flip >= 0.0 && *flip <= 1.0)) {
      throw Error(ErrorCode::InvalidConfig,
                  "flip must lie in [0,1], got " + std::to_string(*flip));
    }
    if (!uses_flip(pick)) {
      throw Error(ErrorCode::InvalidConfig, "flip does not apply to pick=random");
    }
  }
  if (batch_size == 0) throw Error(ErrorCode::InvalidConfig, "batch size must be positive");
}

// ---------------------------------------------------------------------------
// Sampling

WeightVector invert_weights(const WeightVector& weights) {
  WeightVector out;
  for (const auto& [name, w] : weights.entries()) out.set(name, 1.0 / w);
  return out;
}

const std::string& sample_categorical(const WeightVector& weights, Rng& rng) {
  if (weights.empty()) throw Error(ErrorCode::EmptyWeightVector, "");
  const double u = rng.uniform01() * weights.total();
  double prefix = 0.0;
  for (const auto& [name, w] : weights.entries()) {
    prefix += w;
    if (u < prefix) return name;
  }
  // u can reach the rounded total only through floating-point error.
  return std::prev(weights.entries().end())->first;
}

namespace {

bool draw_flip(double flip, Rng& rng) {
  if (flip <= 0.0) return false;
  if (flip >= 1.0) return true;
  return rng.bernoulli(flip);
}

const SymbolPtr& find_candidate(std::span<const SymbolPtr> candidates,
                                std::string_view name) {
  const auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](const SymbolPtr& s) { return s->name == name; });
  return *it;
}

}  // namespace

SymbolPtr pick(const GenConfig& cfg, std::span<const SymbolPtr> candidates,
               const StatsStore& store, const Path& path, Rng& rng) {
  if (candidates.empty()) throw Error(ErrorCode::NoSymbolsForSort, "no candidates");

  WeightVector weights;
  switch (cfg.pick) {
    case PickStrategy::Random:
      return candidates[rng.uniform_index(candidates.size())];
    case PickStrategy::Weights:
      weights = weights_global(store, candidates);
      // Nothing observed for this sort yet.
      if (weights.empty()) return candidates[rng.uniform_index(candidates.size())];
      break;
    case PickStrategy::Paths:
      weights = weights_path(store, path, candidates);
      break;
  }
  if (draw_flip(cfg.effective_flip(), rng)) weights = invert_weights(weights);
  return find_candidate(candidates, sample_categorical(weights, rng));
}

// ---------------------------------------------------------------------------
// Term construction

namespace {

class TermBuilder {
 public:
  TermBuilder(const GenConfig& cfg, const StatsStore& store, const SymbolSet& universe,
              Rng& rng)
      : cfg_(cfg), store_(store), rng_(rng) {
    for (const auto& [name, decl] : universe) {
      Candidates& entry = by_sort_[decl->result_sort];
      entry.all.push_back(decl);
      if (decl->is_constant()) entry.constants.push_back(decl);
    }
  }

  GroundTerm build(const Sort& sort) {
    Path path;
    return build(sort, 0, path);
  }

 private:
  struct Candidates {
    std::vector<SymbolPtr> all;
    std::vector<SymbolPtr> constants;
  };

  GroundTerm build(const Sort& sort, std::size_t depth, Path& path) {
    const auto it = by_sort_.find(sort);
    if (it == by_sort_.end()) throw Error(ErrorCode::NoSymbolsForSort, sort.name);
    const bool at_limit = depth >= cfg_.depth;
    const std::vector<SymbolPtr>& eligible =
        at_limit ? it->second.constants : it->second.all;
    if (eligible.empty()) throw Error(ErrorCode::NoConstant, sort.name);

    SymbolPtr head = pick(cfg_, eligible, store_, path, rng_);
    if (head->is_constant()) return GroundTerm::make(std::move(head));

    std::vector<GroundTerm> args;
    args.reserve(head->arity());
    path.symbols.push_back(head->name);
    for (const Sort& arg_sort : head->arg_sorts) {
      args.push_back(build(arg_sort, depth + 1, path));
    }
    path.symbols.pop_back();
    return GroundTerm::make(std::move(head), std::move(args));
  }

  const GenConfig& cfg_;
  const StatsStore& store_;
  Rng& rng_;
  std::map<Sort, Candidates> by_sort_;
};

}  // namespace

GroundTerm make_term(const Sort& sort, const GenConfig& cfg, const StatsStore& store,
                     const SymbolSet& universe, Rng& rng) {
  return TermBuilder(cfg, store, universe, rng).build(sort);
}

GroundTerm make_term(const Sort& sort, const GenConfig& cfg, const StatsStore& store,
                     Rng& rng) {
  return make_term(sort, cfg, store, store.observed_symbols(), rng);
}

Batch generate_batch(const Sort& sort, const GenConfig& cfg, const StatsStore& store,
                     const SymbolSet& universe, Rng& rng) {
  Batch batch{sort, {}, std::nullopt};
  TermBuilder builder(cfg, store, universe, rng);
  std::unordered_set<GroundTerm> seen;
  try {
    for (std::size_t i = 0; i < cfg.batch_size; ++i) {
      GroundTerm term = builder.build(sort);
      if (seen.insert(term).second) batch.terms.push_back(std::move(term));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoSymbolsForSort && e.code() != ErrorCode::NoConstant) {
      throw;
    }
    batch.terms.clear();
    batch.diagnostic = e.what();
  }
  return batch;
}

Batch generate_batch(const Sort& sort, const GenConfig& cfg, const StatsStore& store,
                     Rng& rng) {
  return generate_batch(sort, cfg, store, store.observed_symbols(), rng);
}

}  // namespace probgen
