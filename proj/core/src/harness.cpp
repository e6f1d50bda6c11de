#include "probgen/harness.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>

namespace probgen {

// ---------------------------------------------------------------------------
// Grid

GridSpec GridSpec::paper() {
  return GridSpec{
      {EffortMode::LastCall, EffortMode::Interleave},
      {PickStrategy::Random, PickStrategy::Weights, PickStrategy::Paths},
      {0, 1, 2, 3, 4},
      {0.0, 0.2, 0.5, 0.8, 1.0},
  };
}

std::size_t grid_size(const GridSpec& spec) noexcept {
  std::size_t n = 0;
  for (const PickStrategy pick : spec.picks) {
    n += spec.efforts.size() * spec.depths.size() *
         (uses_flip(pick) ? spec.flips.size() : 1);
  }
  return n;
}

std::vector<GenConfig> enumerate_grid(const GridSpec& spec, std::uint64_t seed,
                                      std::size_t batch_size) {
  if (spec.efforts.empty()) throw Error(ErrorCode::EmptyGridAxis, "effort");
  if (spec.picks.empty()) throw Error(ErrorCode::EmptyGridAxis, "pick");
  if (spec.depths.empty()) throw Error(ErrorCode::EmptyGridAxis, "depth");
  const bool needs_flips = std::any_of(spec.picks.begin(), spec.picks.end(), uses_flip);
  if (needs_flips && spec.flips.empty()) throw Error(ErrorCode::EmptyGridAxis, "flip");

  std::vector<GenConfig> out;
  out.reserve(grid_size(spec));
  for (const EffortMode effort : spec.efforts) {
    for (const PickStrategy pick : spec.picks) {
      for (const std::size_t depth : spec.depths) {
        GenConfig cfg;
        cfg.effort = effort;
        cfg.pick = pick;
        cfg.depth = depth;
        cfg.seed = seed;
        cfg.batch_size = batch_size;
        if (!uses_flip(pick)) {
          cfg.validate();
          out.push_back(cfg);
          continue;
        }
        for (const double flip : spec.flips) {
          cfg.flip = flip;
          cfg.validate();
          out.push_back(cfg);
        }
      }
    }
  }
  return out;
}

namespace {

std::string shortest(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string out(buf, ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string strategy_id(const GenConfig& cfg) {
  std::string id(to_string(cfg.effort));
  id += '-';
  id += to_string(cfg.pick);
  id += "-d" + std::to_string(cfg.depth);
  if (uses_flip(cfg.pick)) id += "-f" + shortest(cfg.effective_flip());
  return id;
}

std::optional<GenConfig> parse_strategy_id(std::string_view id) {
  const std::vector<std::string_view> parts = split(id, '-');
  if (parts.size() < 3 || parts.size() > 4) return std::nullopt;
  GenConfig cfg;
  try {
    cfg.effort = parse_effort_mode(parts[0]);
    cfg.pick = parse_pick(parts[1]);
  } catch (const Error&) {
    return std::nullopt;
  }
  const auto number = [](std::string_view text, auto& value) {
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return !text.empty() && ec == std::errc{} && ptr == text.data() + text.size();
  };
  if (parts[2].size() < 2 || parts[2][0] != 'd' || !number(parts[2].substr(1), cfg.depth)) {
    return std::nullopt;
  }
  if (uses_flip(cfg.pick) != (parts.size() == 4)) return std::nullopt;
  if (parts.size() == 4) {
    double flip = 0;
    if (parts[3].size() < 2 || parts[3][0] != 'f' || !number(parts[3].substr(1), flip)) {
      return std::nullopt;
    }
    cfg.flip = flip;
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Results matrix

ResultsMatrix::ResultsMatrix(std::vector<std::string> problems,
                             std::vector<std::string> strategies,
                             std::vector<SolvedSet> solved,
                             std::optional<std::string> reference)
    : problems_(std::move(problems)),
      strategies_(std::move(strategies)),
      solved_(std::move(solved)) {
  std::set<std::string_view> seen;
  for (const std::string& p : problems_) {
    if (!seen.insert(p).second) throw Error(ErrorCode::DuplicateProblem, p);
  }
  seen.clear();
  for (const std::string& s : strategies_) {
    if (!seen.insert(s).second) throw Error(ErrorCode::DuplicateStrategy, s);
  }
  if (solved_.size() != strategies_.size()) {
    throw Error(ErrorCode::RaggedRow, "expected " + std::to_string(strategies_.size()) +
                                          " strategy rows, got " +
                                          std::to_string(solved_.size()));
  }
  for (std::size_t s = 0; s < solved_.size(); ++s) {
    if (solved_[s].size() != problems_.size()) {
      throw Error(ErrorCode::RaggedRow, strategies_[s] + " has " +
                                            std::to_string(solved_[s].size()) +
                                            " cells, expected " +
                                            std::to_string(problems_.size()));
    }
  }
  if (reference) set_reference(std::move(*reference));
}

void ResultsMatrix::set_reference(std::string id) {
  if (!index_of(id)) throw Error(ErrorCode::UnknownStrategy, id);
  reference_ = std::move(id);
}

std::optional<std::size_t> ResultsMatrix::index_of(std::string_view strategy) const {
  const auto it = std::find(strategies_.begin(), strategies_.end(), strategy);
  if (it == strategies_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - strategies_.begin());
}

ResultsMatrix load_results(std::string_view csv_text) {
  constexpr std::string_view kReference = "#reference=";
  std::optional<std::string> reference;
  std::vector<std::string> strategies;
  std::vector<std::string> problems;
  std::vector<std::vector<bool>> cells;  // [problem][strategy]
  bool have_header = false;

  int line_no = 0;
  for (std::string_view line : split(csv_text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kReference)) {
        reference = std::string(trim(line.substr(kReference.size())));
      }
      continue;
    }
    const std::vector<std::string_view> fields = split(line, ',');
    if (!have_header) {
      if (trim(fields.front()) != "problem") {
        throw Error(ErrorCode::Malformed, "header must start with 'problem'",
                    SourceLocation{line_no, 1});
      }
      for (std::size_t i = 1; i < fields.size(); ++i) {
        std::string id(trim(fields[i]));
        if (id.empty()) {
          throw Error(ErrorCode::Malformed, "empty strategy id",
                      SourceLocation{line_no, static_cast<int>(i + 1)});
        }
        if (std::find(strategies.begin(), strategies.end(), id) != strategies.end()) {
          throw Error(ErrorCode::DuplicateStrategy, id,
                      SourceLocation{line_no, static_cast<int>(i + 1)});
        }
        strategies.push_back(std::move(id));
      }
      have_header = true;
      continue;
    }
    if (fields.size() != strategies.size() + 1) {
      throw Error(ErrorCode::RaggedRow,
                  "row " + std::to_string(problems.size() + 1) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(strategies.size() + 1),
                  SourceLocation{line_no, 1});
    }
    std::string problem(trim(fields.front()));
    if (std::find(problems.begin(), problems.end(), problem) != problems.end()) {
      throw Error(ErrorCode::DuplicateProblem, problem, SourceLocation{line_no, 1});
    }
    std::vector<bool> row;
    row.reserve(strategies.size());
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const std::string_view cell = trim(fields[i]);
      if (cell != "0" && cell != "1") {
        throw Error(ErrorCode::NonBinaryCell,
                    "row " + std::to_string(problems.size() + 1) + ", col " +
                        std::to_string(i) + ": '" + std::string(cell) + "'",
                    SourceLocation{line_no, static_cast<int>(i + 1)});
      }
      row.push_back(cell == "1");
    }
    problems.push_back(std::move(problem));
    cells.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorCode::Malformed, "missing header");

  std::vector<ResultsMatrix::SolvedSet> solved(
      strategies.size(), ResultsMatrix::SolvedSet(problems.size()));
  for (std::size_t p = 0; p < cells.size(); ++p) {
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      if (cells[p][s]) solved[s].set(p);
    }
  }
  return ResultsMatrix(std::move(problems), std::move(strategies), std::move(solved),
                       std::move(reference));
}

std::string write_results(const ResultsMatrix& matrix) {
  std::string out;
  if (matrix.reference()) out += "#reference=" + *matrix.reference() + "\n";
  out += "problem";
  for (const std::string& s : matrix.strategies()) out += "," + s;
  out += '\n';
  for (std::size_t p = 0; p < matrix.problems().size(); ++p) {
    out += matrix.problems()[p];
    for (std::size_t s = 0; s < matrix.strategies().size(); ++s) {
      out += matrix.solved(s, p) ? ",1" : ",0";
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Analyses

std::vector<AggregateRow> aggregate_vs_reference(const ResultsMatrix& matrix) {
  if (!matrix.reference()) throw Error(ErrorCode::NoReference, "");
  const ResultsMatrix::SolvedSet& ref = matrix.solved(*matrix.index_of(*matrix.reference()));
  std::vector<AggregateRow> out;
  out.reserve(matrix.strategies().size());
  for (std::size_t s = 0; s < matrix.strategies().size(); ++s) {
    const ResultsMatrix::SolvedSet& mine = matrix.solved(s);
    out.push_back(AggregateRow{
        matrix.strategies()[s],
        mine.count(),
        (mine - ref).count(),
        (ref - mine).count(),
    });
  }
  return out;
}

std::vector<CoverRow> greedy_cover(const ResultsMatrix& matrix, const CoverOptions& options) {
  const std::size_t n = matrix.strategies().size();
  const std::size_t limit = std::min(n, options.top.value_or(n));
  std::vector<CoverRow> rows;
  std::vector<bool> placed(n, false);
  ResultsMatrix::SolvedSet covered(matrix.problems().size());

  while (rows.size() < limit) {
    std::optional<std::size_t> best;
    std::size_t best_gain = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (placed[s]) continue;
      const std::size_t gain = (matrix.solved(s) - covered).count();
      if (!best) {
        best = s;
        best_gain = gain;
        continue;
      }
      const auto key = [&](std::size_t i, std::size_t g) {
        // Larger is better: gain, solo solves, then the smaller id.
        return std::make_tuple(g, matrix.solve_count(i));
      };
      const auto mine = key(s, gain);
      const auto theirs = key(*best, best_gain);
      if (mine > theirs ||
          (mine == theirs && matrix.strategies()[s] < matrix.strategies()[*best])) {
        best = s;
        best_gain = gain;
      }
    }
    if (!best || (best_gain == 0 && !options.exhaust)) break;

    CoverRow row;
    row.strategy = matrix.strategies()[*best];
    row.solves = matrix.solve_count(*best);
    row.added = best_gain;
    row.total = covered.count() + best_gain;
    if (!rows.empty() && rows.back().total > 0) {
      row.adds_fraction =
          static_cast<double>(best_gain) / static_cast<double>(rows.back().total);
    }
    covered |= matrix.solved(*best);
    placed[*best] = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_adds_percent(std::size_t added, std::size_t prev_total) {
  if (prev_total == 0) return "-";
  // hundredths of a percent, rounded half up: floor((2 * 10000 * a + t) / (2t))
  const auto a = static_cast<unsigned long long>(added);
  const auto t = static_cast<unsigned long long>(prev_total);
  const unsigned long long hundredths = (2ULL * 10000ULL * a + t) / (2ULL * t);
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(hundredths / 100) + "." + frac;
}

}  // namespace probgen
