#include "probgen/sexpr.hpp"

#include <cctype>

namespace probgen {

namespace {

constexpr std::string_view kSymbolPunct = "~!@$%^&*_-+=<>.?/";

bool is_symbol_char(char c) noexcept {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || kSymbolPunct.find(c) != std::string_view::npos;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_blank();
    while (pos_ < text_.size()) {
      out.push_back(read_one());
      skip_blank();
    }
    return out;
  }

 private:
  SourceLocation here() const { return {line_, column_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else {
        return;
      }
    }
  }

  SExpr read_one() {
    const SourceLocation start = here();
    const char c = text_[pos_];
    if (c == ')') throw Error(ErrorCode::Malformed, "unexpected ')'", start);
    if (c == '|') {
      throw Error(ErrorCode::UnsupportedSyntax, "quoted symbol", start);
    }
    if (c == '"') {
      throw Error(ErrorCode::UnsupportedSyntax, "string literal", start);
    }
    if (c == '(') {
      SExpr list;
      list.kind = SExpr::Kind::List;
      list.where = start;
      advance();
      for (;;) {
        skip_blank();
        if (pos_ >= text_.size()) {
          throw Error(ErrorCode::Malformed, "unterminated list", start);
        }
        if (text_[pos_] == ')') {
          advance();
          return list;
        }
        list.items.push_back(read_one());
      }
    }
    SExpr atom;
    atom.where = start;
    const std::size_t begin = pos_;
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || d == '|' || d == '"' ||
          std::isspace(static_cast<unsigned char>(d)) != 0) {
        break;
      }
      advance();
    }
    atom.atom.assign(text_.substr(begin, pos_ - begin));
    return atom;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) {
  return Reader(text).read_all();
}

bool is_simple_symbol(std::string_view text) noexcept {
  if (text.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(text.front())) != 0) return false;
  for (const char c : text) {
    if (!is_symbol_char(c)) return false;
  }
  return true;
}

bool is_keyword(std::string_view text) noexcept {
  return text.size() > 1 && text.front() == ':' &&
         is_simple_symbol(text.substr(1));
}

std::string to_string(const SExpr& expr) {
  if (expr.is_atom()) return expr.atom;
  std::string out = "(";
  for (std::size_t i = 0; i < expr.items.size(); ++i) {
    if (i != 0) out += ' ';
    out += to_string(expr.items[i]);
  }
  out += ')';
  return out;
}

}  // namespace probgen
