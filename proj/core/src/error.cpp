#include "probgen/error.hpp"

namespace probgen {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::UnsupportedSyntax: return "UnsupportedSyntax";
    case ErrorCode::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorCode::UndeclaredSort: return "UndeclaredSort";
    case ErrorCode::ParametricSort: return "ParametricSort";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::UnknownQuantifier: return "UnknownQuantifier";
    case ErrorCode::BadEffortLevel: return "BadEffortLevel";
    case ErrorCode::EmptyWeightVector: return "EmptyWeightVector";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::NoSymbolsForSort: return "NoSymbolsForSort";
    case ErrorCode::NoConstant: return "NoConstant";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyGridAxis: return "EmptyGridAxis";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::NonBinaryCell: return "NonBinaryCell";
    case ErrorCode::DuplicateStrategy: return "DuplicateStrategy";
    case ErrorCode::DuplicateProblem: return "DuplicateProblem";
    case ErrorCode::UnknownStrategy: return "UnknownStrategy";
    case ErrorCode::NoReference: return "NoReference";
  }
  return "Unknown";
}

namespace {

std::string render(ErrorCode code, const std::string& detail,
                   const std::optional<SourceLocation>& where) {
  std::string out;
  if (where) {
    out += std::to_string(where->line);
    out += ':';
    out += std::to_string(where->column);
    out += ": ";
  }
  out += to_string(code);
  out += '(';
  out += detail;
  out += ')';
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail,
             std::optional<SourceLocation> where)
    : std::runtime_error(render(code, detail, where)),
      code_(code),
      detail_(std::move(detail)),
      where_(where) {}

}  // namespace probgen
