#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "probgen/generator.hpp"
#include "probgen/harness.hpp"
#include "probgen/replay.hpp"
#include "probgen/stats.hpp"
#include "probgen/term.hpp"

namespace probgen::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs `parse` on the contents of `path`, prefixing parse errors with the
/// file name, e.g. `sig.smt2:3:14: UndeclaredSort(S)`.
template <class Parse>
auto parse_file(const std::string& path, Parse parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw InputError(path + (e.where() ? ":" : ": ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Shared option groups

struct SourceOptions {
  std::string sig_path;
  std::string trace_path;
  std::string terms_path;
  std::string stats_path;
};

void add_source_options(CLI::App& cmd, SourceOptions& src) {
  cmd.add_option("--sig", src.sig_path, "Signature file (declare-sort/declare-fun/declare-const)");
  auto* trace = cmd.add_option("--trace", src.trace_path,
                               "Trace file; every recorded instantiation is observed");
  auto* terms = cmd.add_option("--terms", src.terms_path,
                               "File of ground terms to observe (needs --sig)");
  auto* stats = cmd.add_option("--stats", src.stats_path,
                               "Statistics dump to load (needs --sig)");
  trace->excludes(terms)->excludes(stats);
  terms->excludes(stats);
}

struct Session {
  Signature signature;
  StatsStore store;
  std::optional<Trace> trace;
};

Session load_session(const SourceOptions& src) {
  Session session;
  if (!src.sig_path.empty()) {
    session.signature = parse_file(src.sig_path, [](const std::string& text) {
      return parse_signature(text);
    });
  }
  if (!src.trace_path.empty()) {
    session.trace = parse_file(src.trace_path, [&](const std::string& text) {
      return parse_trace(text, session.signature);
    });
    session.signature = session.trace->signature;
    for (const Round& round : session.trace->rounds) {
      for (const InstRecord& inst : round.observed) {
        for (const GroundTerm& t : inst.terms) session.store.observe(t);
      }
    }
  } else if (!src.terms_path.empty()) {
    if (src.sig_path.empty()) throw InputError("--terms requires --sig");
    session.store = parse_file(src.terms_path, [&](const std::string& text) {
      StatsStore store;
      for (const SExpr& expr : parse_sexprs(text)) {
        store.observe(term_from_sexpr(expr, session.signature));
      }
      return store;
    });
  } else if (!src.stats_path.empty()) {
    if (src.sig_path.empty()) throw InputError("--stats requires --sig");
    session.store = parse_file(src.stats_path, [&](const std::string& text) {
      return load_stats(text, session.signature);
    });
  }
  return session;
}

struct StrategyOptions {
  std::string pick = "weights";
  std::size_t depth = 0;
  std::optional<double> flip;
  std::string effort = "lastcall";
  std::uint64_t seed = 0;
  std::string universe = "observed";
};

void add_strategy_options(CLI::App& cmd, StrategyOptions& opt, bool with_effort) {
  cmd.add_option("--pick", opt.pick, "Symbol selection: random, weights or paths")
      ->check(CLI::IsMember({"random", "weights", "paths"}))
      ->capture_default_str();
  cmd.add_option("--depth", opt.depth, "Maximum term depth")->capture_default_str();
  cmd.add_option("--flip", opt.flip, "Probability of inverting the weights at each pick")
      ->check(CLI::Range(0.0, 1.0));
  if (with_effort) {
    cmd.add_option("--effort", opt.effort, "Firing policy: lastcall or interleave")
        ->check(CLI::IsMember({"lastcall", "interleave"}))
        ->capture_default_str();
  }
  cmd.add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  cmd.add_option("--universe", opt.universe,
                 "Candidate symbols: observed or signature")
      ->check(CLI::IsMember({"observed", "signature"}))
      ->capture_default_str();
}

GenConfig to_config(const StrategyOptions& opt, std::size_t batch_size) {
  GenConfig cfg;
  cfg.pick = parse_pick(opt.pick);
  cfg.depth = opt.depth;
  cfg.effort = parse_effort_mode(opt.effort);
  cfg.seed = opt.seed;
  cfg.batch_size = batch_size;
  if (uses_flip(cfg.pick)) cfg.flip = opt.flip;
  cfg.validate();
  return cfg;
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const std::string& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Table printing

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows,
                 const std::vector<bool>& right_align) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i != 0) line += "  ";
      const std::string pad(width[i] - row[i].size(), ' ');
      const bool right = i < right_align.size() && right_align[i];
      line += right ? pad + row[i] : row[i] + (i + 1 == row.size() ? "" : pad);
    }
    out << line << '\n';
  }
}

void print_csv(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

std::string flip_text(const GenConfig& cfg) {
  if (!uses_flip(cfg.pick)) return "-";
  const std::string id = strategy_id(cfg);
  return id.substr(id.rfind("-f") + 2);
}

// ---------------------------------------------------------------------------
// JSON report

nlohmann::ordered_json report_to_json(const SessionReport& report) {
  using nlohmann::ordered_json;
  const GenConfig& cfg = report.config;
  ordered_json config = {
      {"pick", to_string(cfg.pick)},
      {"depth", cfg.depth},
      {"flip", uses_flip(cfg.pick) ? ordered_json(cfg.effective_flip()) : ordered_json()},
      {"effort", to_string(cfg.effort)},
      {"seed", cfg.seed},
      {"batch_size", cfg.batch_size},
      {"universe", to_string(report.options.universe)},
      {"observe_generated", report.options.observe_generated},
  };
  ordered_json rounds = ordered_json::array();
  for (const RoundReport& r : report.rounds) {
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(r.stats_digest));
    ordered_json batches = ordered_json::array();
    for (const Batch& b : r.batches) {
      ordered_json terms = ordered_json::array();
      for (const GroundTerm& t : b.terms) terms.push_back(print_term(t));
      ordered_json entry = {{"sort", b.sort.name}, {"terms", std::move(terms)}};
      if (b.diagnostic) entry["diagnostic"] = *b.diagnostic;
      batches.push_back(std::move(entry));
    }
    rounds.push_back({
        {"index", r.index},
        {"effort", to_string(r.effort_reached)},
        {"lemma", r.lemma_produced_by_others},
        {"fired", r.fired},
        {"observed", r.observed_terms},
        {"stats_terms", r.stats_terms},
        {"stats_digest", digest},
        {"batches", std::move(batches)},
    });
  }
  return {{"config", std::move(config)}, {"rounds", std::move(rounds)}};
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic generation of quantifier instantiation terms"};
  app.name("probgen");
  app.require_subcommand(1);

  // learn / stats dump
  SourceOptions learn_src;
  auto* learn = app.add_subcommand("learn", "Learn symbol statistics and print the dump");
  add_source_options(*learn, learn_src);

  SourceOptions dump_src;
  auto* stats = app.add_subcommand("stats", "Statistics utilities");
  stats->require_subcommand(1);
  auto* dump = stats->add_subcommand("dump", "Print learned statistics as s-expressions");
  add_source_options(*dump, dump_src);

  // gen
  SourceOptions gen_src;
  StrategyOptions gen_opt;
  std::size_t gen_count = 20;
  std::string gen_sort;
  bool gen_dedup = false;
  auto* gen = app.add_subcommand("gen", "Generate ground terms of one sort");
  add_source_options(*gen, gen_src);
  add_strategy_options(*gen, gen_opt, false);
  gen->add_option("--count", gen_count, "Number of terms to generate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--sort", gen_sort, "Sort of the generated terms")->required();
  gen->add_flag("--dedup", gen_dedup, "Generate one batch of --count draws without duplicates");

  // replay
  SourceOptions replay_src;
  StrategyOptions replay_opt;
  std::size_t replay_batch = 20;
  bool replay_feedback = false;
  std::string replay_format = "sexpr";
  auto* replay = app.add_subcommand("replay", "Replay a trace round by round");
  replay->add_option("--trace", replay_src.trace_path, "Trace file")->required();
  replay->add_option("--sig", replay_src.sig_path, "Extra signature declarations");
  add_strategy_options(*replay, replay_opt, true);
  replay->add_option("--batch-size", replay_batch, "Terms drawn per sort and round")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  replay->add_flag("--observe-generated", replay_feedback,
                   "Also learn from this module's own terms");
  replay->add_option("--format", replay_format, "sexpr or json")
      ->check(CLI::IsMember({"sexpr", "json"}))
      ->capture_default_str();

  // grid
  bool grid_paper = false;
  std::vector<std::string> grid_efforts, grid_picks, grid_depths, grid_flips;
  std::string grid_format = "text";
  auto* grid = app.add_subcommand("grid", "Enumerate a strategy grid");
  grid->add_flag("--paper", grid_paper, "The 110-strategy evaluation grid (default axes)");
  grid->add_option("--efforts", grid_efforts, "Comma-separated effort modes");
  grid->add_option("--picks", grid_picks, "Comma-separated pick strategies");
  grid->add_option("--depths", grid_depths, "Comma-separated depths");
  grid->add_option("--flips", grid_flips, "Comma-separated flip probabilities");
  grid->add_option("--format", grid_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  // cover
  std::string cover_in;
  std::optional<std::size_t> cover_top;
  bool cover_all = false;
  std::string cover_format = "text";
  auto* cover = app.add_subcommand("cover", "Greedy complementarity cover of a results matrix");
  cover->add_option("--in", cover_in, "Results CSV")->required();
  cover->add_option("--top", cover_top, "Maximum number of rows");
  cover->add_flag("--all", cover_all, "Keep placing strategies that add nothing");
  cover->add_option("--format", cover_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  // aggregate
  std::string agg_in;
  std::string agg_ref;
  std::string agg_format = "text";
  auto* aggregate = app.add_subcommand("aggregate", "Totals and gains/losses against a reference");
  aggregate->add_option("--in", agg_in, "Results CSV")->required();
  aggregate->add_option("--ref", agg_ref, "Reference strategy (overrides #reference=)");
  aggregate->add_option("--format", agg_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    const CLI::App* context = &app;
    for (const CLI::App* sub = context; sub != nullptr;) {
      const auto parsed = sub->get_subcommands();
      if (parsed.empty()) break;
      context = sub = parsed.front();
    }
    err << context->help();
    return 1;
  }

  try {
    if (learn->parsed() || dump->parsed()) {
      const Session session = load_session(learn->parsed() ? learn_src : dump_src);
      out << dump_stats(session.store);
    } else if (gen->parsed()) {
      const Session session = load_session(gen_src);
      const GenConfig cfg = to_config(gen_opt, gen_count);
      const Sort sort{gen_sort};
      if (!session.signature.has_sort(sort.name)) {
        throw Error(ErrorCode::UndeclaredSort, sort.name);
      }
      const SymbolSet& universe = parse_universe(gen_opt.universe) == Universe::Signature
                                      ? session.signature.symbols()
                                      : session.store.observed_symbols();
      Rng rng(cfg.seed);
      if (gen_dedup) {
        const Batch batch = generate_batch(sort, cfg, session.store, universe, rng);
        if (batch.diagnostic) throw InputError(*batch.diagnostic);
        for (const GroundTerm& t : batch.terms) out << t << '\n';
      } else {
        for (std::size_t i = 0; i < gen_count; ++i) {
          out << make_term(sort, cfg, session.store, universe, rng) << '\n';
        }
      }
    } else if (replay->parsed()) {
      const Session session = load_session(replay_src);
      const GenConfig cfg = to_config(replay_opt, replay_batch);
      ReplayOptions options;
      options.universe = parse_universe(replay_opt.universe);
      options.observe_generated = replay_feedback;
      const SessionReport report = run_session(*session.trace, cfg, options);
      if (replay_format == "json") {
        out << report_to_json(report).dump(2) << '\n';
      } else {
        out << report_to_sexpr(report);
      }
    } else if (grid->parsed()) {
      GridSpec spec = GridSpec::paper();
      if (!grid_efforts.empty()) {
        spec.efforts.clear();
        for (const auto& e : split_list(grid_efforts)) spec.efforts.push_back(parse_effort_mode(e));
      }
      if (!grid_picks.empty()) {
        spec.picks.clear();
        for (const auto& p : split_list(grid_picks)) spec.picks.push_back(parse_pick(p));
      }
      if (!grid_depths.empty()) {
        spec.depths.clear();
        for (const auto& d : split_list(grid_depths)) spec.depths.push_back(std::stoul(d));
      }
      if (!grid_flips.empty()) {
        spec.flips.clear();
        for (const auto& f : split_list(grid_flips)) spec.flips.push_back(std::stod(f));
      }
      std::vector<std::vector<std::string>> rows;
      if (grid_format == "csv") rows.push_back({"id", "effort", "pick", "depth", "flip"});
      for (const GenConfig& cfg : enumerate_grid(spec)) {
        rows.push_back({strategy_id(cfg), std::string(to_string(cfg.effort)),
                        std::string(to_string(cfg.pick)), std::to_string(cfg.depth),
                        flip_text(cfg)});
      }
      if (grid_format == "csv") print_csv(out, rows);
      else print_table(out, rows, {false, false, false, true, true});
    } else if (cover->parsed()) {
      ResultsMatrix matrix = parse_file(cover_in, [](const std::string& text) {
        return load_results(text);
      });
      CoverOptions options;
      options.top = cover_top;
      options.exhaust = cover_all;
      const std::vector<CoverRow> rows = greedy_cover(matrix, options);
      const bool by_params = std::all_of(rows.begin(), rows.end(), [](const CoverRow& r) {
        return parse_strategy_id(r.strategy).has_value();
      });
      std::vector<std::vector<std::string>> table;
      if (cover_format == "csv") {
        table.push_back({"strategy", "solves", "new", "adds", "total"});
        for (const CoverRow& r : rows) {
          std::ostringstream adds;
          if (r.adds_fraction) adds << std::setprecision(17) << *r.adds_fraction;
          table.push_back({r.strategy, std::to_string(r.solves), std::to_string(r.added),
                           adds.str(), std::to_string(r.total)});
        }
        print_csv(out, table);
      } else {
        if (by_params) table.push_back({"effort", "depth", "pick", "flip", "solves", "+new", "adds", "=total"});
        else table.push_back({"strategy", "solves", "+new", "adds", "=total"});
        std::size_t prev_total = 0;
        for (const CoverRow& r : rows) {
          std::vector<std::string> line;
          if (by_params) {
            const GenConfig cfg = *parse_strategy_id(r.strategy);
            line = {std::string(to_string(cfg.effort)), std::to_string(cfg.depth),
                    std::string(to_string(cfg.pick)), flip_text(cfg)};
          } else {
            line = {r.strategy};
          }
          line.push_back(std::to_string(r.solves));
          line.push_back("+" + std::to_string(r.added));
          line.push_back(prev_total == 0 ? "-" : "+" + format_adds_percent(r.added, prev_total) + "%");
          line.push_back("=" + std::to_string(r.total));
          prev_total = r.total;
          table.push_back(std::move(line));
        }
        std::vector<bool> right(table.front().size(), true);
        right[0] = false;
        if (by_params) right[2] = false;
        print_table(out, table, right);
      }
    } else if (aggregate->parsed()) {
      ResultsMatrix matrix = parse_file(agg_in, [](const std::string& text) {
        return load_results(text);
      });
      if (!agg_ref.empty()) matrix.set_reference(agg_ref);
      std::vector<std::vector<std::string>> table;
      const bool csv = agg_format == "csv";
      table.push_back(csv ? std::vector<std::string>{"strategy", "total", "gained", "lost"}
                          : std::vector<std::string>{"strategy", "total", "ref(+/-)"});
      for (const AggregateRow& r : aggregate_vs_reference(matrix)) {
        if (csv) {
          table.push_back({r.strategy, std::to_string(r.total), std::to_string(r.gained),
                           std::to_string(r.lost)});
        } else {
          table.push_back({r.strategy, std::to_string(r.total),
                           "+" + std::to_string(r.gained) + "/-" + std::to_string(r.lost)});
        }
      }
      if (csv) print_csv(out, table);
      else print_table(out, table, {false, true, true});
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid number: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: number out of range: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace probgen::cli
