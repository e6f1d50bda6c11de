#include "probgen/replay.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace probgen {

std::string_view to_string(EffortLevel level) noexcept {
  switch (level) {
    case EffortLevel::Conflict: return "conflict";
    case EffortLevel::Standard: return "standard";
    case EffortLevel::Model: return "model";
    case EffortLevel::LastCall: return "lastcall";
  }
  return "?";
}

EffortLevel parse_effort_level(std::string_view text) {
  if (text == "conflict") return EffortLevel::Conflict;
  if (text == "standard") return EffortLevel::Standard;
  if (text == "model") return EffortLevel::Model;
  if (text == "lastcall") return EffortLevel::LastCall;
  throw Error(ErrorCode::BadEffortLevel, std::string(text));
}

bool should_fire(EffortMode mode, EffortLevel reached,
                 bool lemma_produced_by_others) noexcept {
  switch (mode) {
    case EffortMode::LastCall:
      return reached == EffortLevel::LastCall && !lemma_produced_by_others;
    case EffortMode::Interleave:
      return reached >= EffortLevel::Standard;
  }
  return false;
}

bool should_fire(EffortMode mode, const Round& round) noexcept {
  return should_fire(mode, round.effort_reached, round.lemma_produced_by_others);
}

// ---------------------------------------------------------------------------
// Trace parsing

namespace {

enum class Section { Declarations, Quantifiers, Rounds };

bool parse_bool(const SExpr& expr) {
  if (expr.is_atom("true")) return true;
  if (expr.is_atom("false")) return false;
  throw Error(ErrorCode::Malformed, "expected true or false, got " + to_string(expr),
              expr.where);
}

QuantifierDecl parse_quantifier(const SExpr& expr, const Signature& sig) {
  if (expr.items.size() != 3 || !expr.items[1].is_atom() ||
      !is_simple_symbol(expr.items[1].atom) || !expr.items[2].is_list()) {
    throw Error(ErrorCode::Malformed, "expected (quantifier <id> (<sort>*))", expr.where);
  }
  QuantifierDecl q{expr.items[1].atom, {}};
  for (const SExpr& s : expr.items[2].items) {
    if (!s.is_atom() || !is_simple_symbol(s.atom)) {
      throw Error(ErrorCode::Malformed, "expected a sort name", s.where);
    }
    if (!sig.has_sort(s.atom)) throw Error(ErrorCode::UndeclaredSort, s.atom, s.where);
    q.bound_sorts.push_back(Sort{s.atom});
  }
  return q;
}

InstRecord parse_inst(const SExpr& expr, const Signature& sig,
                      const std::map<std::string, const QuantifierDecl*>& quantifiers) {
  if (!expr.is_list() || expr.items.size() < 2 || !expr.items[0].is_atom("inst") ||
      !expr.items[1].is_atom()) {
    throw Error(ErrorCode::Malformed, "expected (inst <id> <term>*)", expr.where);
  }
  const auto q = quantifiers.find(expr.items[1].atom);
  if (q == quantifiers.end()) {
    throw Error(ErrorCode::UnknownQuantifier, expr.items[1].atom, expr.items[1].where);
  }
  const std::vector<Sort>& sorts = q->second->bound_sorts;
  const std::size_t given = expr.items.size() - 2;
  if (given != sorts.size()) {
    throw Error(ErrorCode::ArityMismatch,
                q->first + ", expected " + std::to_string(sorts.size()) + ", got " +
                    std::to_string(given),
                expr.where);
  }
  InstRecord record{q->first, {}};
  for (std::size_t i = 0; i < given; ++i) {
    const SExpr& term_expr = expr.items[i + 2];
    GroundTerm term = term_from_sexpr(term_expr, sig);
    if (term.sort() != sorts[i]) {
      throw Error(ErrorCode::SortMismatch,
                  q->first + "#" + std::to_string(i + 1) + ": expected " + sorts[i].name +
                      ", got " + term.sort().name,
                  term_expr.where);
    }
    record.terms.push_back(std::move(term));
  }
  return record;
}

Round parse_round(const SExpr& expr, const Signature& sig,
                  const std::map<std::string, const QuantifierDecl*>& quantifiers) {
  Round round;
  bool saw_effort = false;
  bool saw_lemma = false;
  std::size_t i = 1;
  while (i < expr.items.size() && expr.items[i].is_atom() && is_keyword(expr.items[i].atom)) {
    const SExpr& key = expr.items[i];
    if (i + 1 >= expr.items.size()) {
      throw Error(ErrorCode::Malformed, "missing value for " + key.atom, key.where);
    }
    const SExpr& value = expr.items[i + 1];
    if (key.atom == ":effort") {
      if (!value.is_atom()) {
        throw Error(ErrorCode::BadEffortLevel, to_string(value), value.where);
      }
      try {
        round.effort_reached = parse_effort_level(value.atom);
      } catch (const Error& e) {
        throw Error(e.code(), e.detail(), value.where);
      }
      saw_effort = true;
    } else if (key.atom == ":lemma") {
      round.lemma_produced_by_others = parse_bool(value);
      saw_lemma = true;
    } else {
      throw Error(ErrorCode::Malformed, "unknown round attribute " + key.atom, key.where);
    }
    i += 2;
  }
  if (!saw_effort) throw Error(ErrorCode::Malformed, "round without :effort", expr.where);
  if (!saw_lemma) throw Error(ErrorCode::Malformed, "round without :lemma", expr.where);
  for (; i < expr.items.size(); ++i) {
    round.observed.push_back(parse_inst(expr.items[i], sig, quantifiers));
  }
  return round;
}

}  // namespace

Trace parse_trace(std::string_view text, Signature base) {
  Trace trace;
  trace.signature = std::move(base);
  Section section = Section::Declarations;
  // Filled when the first round is reached; quantifiers are frozen by then.
  std::map<std::string, const QuantifierDecl*> by_id;

  for (const SExpr& expr : parse_sexprs(text)) {
    if (!expr.is_list() || expr.items.empty() || !expr.items.front().is_atom()) {
      throw Error(ErrorCode::Malformed, "unexpected " + to_string(expr), expr.where);
    }
    const std::string& cmd = expr.items.front().atom;
    if (cmd == "round") {
      if (section != Section::Rounds) {
        section = Section::Rounds;
        for (const QuantifierDecl& q : trace.quantifiers) by_id.emplace(q.id, &q);
      }
      trace.rounds.push_back(parse_round(expr, trace.signature, by_id));
    } else if (cmd == "quantifier") {
      if (section == Section::Rounds) {
        throw Error(ErrorCode::Malformed, "quantifier after the first round", expr.where);
      }
      section = Section::Quantifiers;
      QuantifierDecl q = parse_quantifier(expr, trace.signature);
      const bool duplicate = std::any_of(
          trace.quantifiers.begin(), trace.quantifiers.end(),
          [&](const QuantifierDecl& other) { return other.id == q.id; });
      if (duplicate) {
        throw Error(ErrorCode::DuplicateDeclaration, q.id, expr.items[1].where);
      }
      trace.quantifiers.push_back(std::move(q));
    } else {
      if (section != Section::Declarations) {
        throw Error(ErrorCode::Malformed, "declaration after quantifiers or rounds",
                    expr.where);
      }
      if (!apply_declaration(expr, trace.signature)) {
        throw Error(ErrorCode::Malformed, "unknown command " + cmd, expr.where);
      }
    }
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Sessions

std::size_t SessionReport::fired_rounds() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      rounds.begin(), rounds.end(), [](const RoundReport& r) { return r.fired; }));
}

SessionReport run_session(const Trace& trace, const GenConfig& cfg,
                          const ReplayOptions& options) {
  cfg.validate();
  SessionReport report{cfg, options, {}};
  Rng rng(cfg.seed);
  StatsStore store;
  std::vector<const QuantifierDecl*> order;
  order.reserve(trace.quantifiers.size());
  for (const QuantifierDecl& q : trace.quantifiers) order.push_back(&q);

  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    const Round& round = trace.rounds[k];
    RoundReport out;
    out.index = k + 1;
    out.effort_reached = round.effort_reached;
    out.lemma_produced_by_others = round.lemma_produced_by_others;

    for (const InstRecord& inst : round.observed) {
      for (const GroundTerm& t : inst.terms) store.observe(t);
      out.observed_terms += inst.terms.size();
    }

    out.fired = should_fire(cfg.effort, round);
    if (out.fired) {
      rng.shuffle(std::span(order));
      std::set<Sort> seen;
      const SymbolSet& universe = options.universe == Universe::Signature
                                      ? trace.signature.symbols()
                                      : store.observed_symbols();
      for (const QuantifierDecl* q : order) {
        for (const Sort& sort : q->bound_sorts) {
          if (!seen.insert(sort).second) continue;
          out.batches.push_back(generate_batch(sort, cfg, store, universe, rng));
        }
      }
      if (options.observe_generated) {
        for (const Batch& batch : out.batches) {
          for (const GroundTerm& t : batch.terms) store.observe(t);
        }
      }
    }
    out.stats_terms = store.terms_observed();
    out.stats_digest = stats_digest(store);
    report.rounds.push_back(std::move(out));
  }
  return report;
}

namespace {

std::string format_flip(const GenConfig& cfg) {
  if (!uses_flip(cfg.pick)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", cfg.effective_flip());
  return buf;
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_to_sexpr(const SessionReport& report) {
  const GenConfig& cfg = report.config;
  std::string out = "(session :pick ";
  out += to_string(cfg.pick);
  out += " :depth " + std::to_string(cfg.depth);
  out += " :flip " + format_flip(cfg);
  out += " :effort ";
  out += to_string(cfg.effort);
  out += " :seed " + std::to_string(cfg.seed);
  out += " :batch-size " + std::to_string(cfg.batch_size);
  out += " :universe ";
  out += to_string(report.options.universe);
  out += report.options.observe_generated ? " :observe-generated true" : "";
  out += '\n';
  for (const RoundReport& r : report.rounds) {
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(r.stats_digest));
    out += "  (round " + std::to_string(r.index);
    out += " :effort ";
    out += to_string(r.effort_reached);
    out += r.lemma_produced_by_others ? " :lemma true" : " :lemma false";
    out += r.fired ? " :fired true" : " :fired false";
    out += " :observed " + std::to_string(r.observed_terms);
    out += " :stats-terms " + std::to_string(r.stats_terms);
    out += " :stats-digest ";
    out += digest;
    for (const Batch& b : r.batches) {
      out += "\n    (batch " + b.sort.name;
      if (b.diagnostic) {
        out += " :diagnostic " + quote(*b.diagnostic);
      }
      for (const GroundTerm& t : b.terms) {
        out += ' ';
        out += print_term(t);
      }
      out += ')';
    }
    out += ")\n";
  }
  out += ")\n";
  return out;
}

}  // namespace probgen
