#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace probgen {

enum class ErrorCode {
  Malformed,
  UnsupportedSyntax,
  DuplicateDeclaration,
  UndeclaredSort,
  ParametricSort,
  UnknownSymbol,
  ArityMismatch,
  SortMismatch,
  UnknownQuantifier,
  BadEffortLevel,
  EmptyWeightVector,
  InvalidWeight,
  NoSymbolsForSort,
  NoConstant,
  InvalidConfig,
  EmptyGridAxis,
  RaggedRow,
  NonBinaryCell,
  DuplicateStrategy,
  DuplicateProblem,
  UnknownStrategy,
  NoReference,
};

std::string_view to_string(ErrorCode code) noexcept;

struct SourceLocation {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

/// Every recoverable input or contract failure in the library.
///
/// `what()` renders as `[line:col: ]Code(detail)`, e.g. `3:14: UndeclaredSort(S)`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail,
        std::optional<SourceLocation> where = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<SourceLocation>& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<SourceLocation> where_;
};

}  // namespace probgen
