#include "mhyp/parse.hpp"

#include <cctype>
#include <cstdlib>

namespace mhyp {

namespace {

enum class TokKind { Ident, Number, LParen, RParen, Comma, Caret, Equals, Xi, End };

struct Token {
  TokKind kind;
  std::string text;   // identifier text
  long value = 0;     // numeric value for Number / Xi
  std::size_t offset = 0;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    current_.offset = pos_;
    current_.text.clear();
    current_.value = 0;
    if (pos_ >= text_.size()) {
      current_.kind = TokKind::End;
      return;
    }
    const char c = text_[pos_];
    switch (c) {
      case '(': current_.kind = TokKind::LParen; ++pos_; return;
      case ')': current_.kind = TokKind::RParen; ++pos_; return;
      case ',': current_.kind = TokKind::Comma; ++pos_; return;
      case '^': current_.kind = TokKind::Caret; ++pos_; return;
      case '=': current_.kind = TokKind::Equals; ++pos_; return;
      default: break;
    }
    // UTF-8 ξ (0xCE 0xBE) introduces an auxiliary variable.
    if (static_cast<unsigned char>(c) == 0xCE && pos_ + 1 < text_.size() &&
        static_cast<unsigned char>(text_[pos_ + 1]) == 0xBE) {
      std::size_t p = pos_ + 2;
      std::size_t digits_start = p;
      while (p < text_.size() && is_digit(text_[p])) ++p;
      if (p == digits_start) {
        throw ParseError("expected digits after 'ξ'", pos_);
      }
      current_.kind = TokKind::Xi;
      current_.value = read_number(digits_start, p);
      pos_ = p;
      return;
    }
    if (is_ident_start(c)) {
      std::size_t p = pos_;
      while (p < text_.size() && is_ident_char(text_[p])) ++p;
      current_.kind = TokKind::Ident;
      current_.text.assign(text_.substr(pos_, p - pos_));
      pos_ = p;
      return;
    }
    if (is_digit(c)) {
      std::size_t p = pos_;
      while (p < text_.size() && is_digit(text_[p])) ++p;
      current_.kind = TokKind::Number;
      current_.value = read_number(pos_, p);
      pos_ = p;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  long read_number(std::size_t begin, std::size_t end) const {
    if (end - begin > 9) throw ParseError("number literal too large", begin);
    long v = 0;
    for (std::size_t i = begin; i < end; ++i) v = v * 10 + (text_[i] - '0');
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

/// True if `text` has the shape "x" + digits, i.e. must be read as a
/// variable rather than as an operation symbol.
bool is_var_shape(const std::string& text) {
  if (text.size() < 2 || text[0] != 'x') return false;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (!is_digit(text[i])) return false;
  }
  return true;
}

int var_index_of(const Token& tok) {
  const std::string digits = tok.text.substr(1);
  if (digits.size() > 1 && digits[0] == '0') {
    throw ParseError("variable index must not have leading zeros", tok.offset);
  }
  if (digits.size() > 7) throw ParseError("variable index too large", tok.offset);
  const int index = std::atoi(digits.c_str());
  if (index < 1) throw ParseError("variable index must be at least 1", tok.offset);
  if (index >= kAuxVarBase) {
    throw ParseError("variable index collides with the auxiliary range", tok.offset);
  }
  return index;
}

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig, bool colored, ParseOptions opts)
      : lexer_(text), sig_(sig), colored_(colored), opts_(opts) {}

  Term parse_plain() {
    Term t = term();
    expect_end();
    return t;
  }

  ColoredTerm parse_colored() {
    ColoredTerm t = colored_term();
    expect_end();
    return t;
  }

 private:
  void expect_end() {
    if (lexer_.peek().kind != TokKind::End) {
      throw ParseError("unexpected trailing input", lexer_.peek().offset);
    }
  }

  int aux_index(const Token& tok) {
    if (!opts_.allow_aux_vars) {
      throw ParseError("auxiliary variables are not allowed here", tok.offset);
    }
    if (tok.value < 1) throw ParseError("auxiliary index must be at least 1", tok.offset);
    return kAuxVarBase + static_cast<int>(tok.value);
  }

  // Reads "sym" plus (for the colored grammar) "^color"; returns the pair.
  std::pair<std::string, int> symbol_head(const Token& head) {
    if (!sig_.contains(head.text)) {
      throw ParseError("unknown symbol '" + head.text + "'", head.offset);
    }
    int color = -1;
    if (colored_) {
      if (lexer_.peek().kind != TokKind::Caret) {
        throw ParseError("expected '^color' after symbol '" + head.text + "'",
                         lexer_.peek().offset);
      }
      lexer_.take();
      const Token num = lexer_.take();
      if (num.kind != TokKind::Number) {
        throw ParseError("expected a color after '^'", num.offset);
      }
      color = static_cast<int>(num.value);
    } else if (lexer_.peek().kind == TokKind::Caret) {
      throw ParseError("unexpected '^' in an uncolored term", lexer_.peek().offset);
    }
    return {head.text, color};
  }

  template <typename T, typename Self>
  std::vector<T> argument_list(const std::string& symbol, std::size_t head_offset,
                               Self&& parse_one) {
    const int arity = sig_.arity(symbol);
    std::vector<T> args;
    if (lexer_.peek().kind == TokKind::LParen) {
      if (arity == 0) {
        throw ParseError("nullary symbol '" + symbol + "' takes no argument list",
                         lexer_.peek().offset);
      }
      lexer_.take();
      args.push_back(parse_one());
      while (lexer_.peek().kind == TokKind::Comma) {
        lexer_.take();
        args.push_back(parse_one());
      }
      const Token close = lexer_.take();
      if (close.kind != TokKind::RParen) {
        throw ParseError("expected ')' or ','", close.offset);
      }
    }
    if (static_cast<int>(args.size()) != arity) {
      throw ParseError("symbol '" + symbol + "' has arity " + std::to_string(arity) +
                           " but got " + std::to_string(args.size()) + " arguments",
                       head_offset);
    }
    return args;
  }

  Term term() {
    const Token head = lexer_.take();
    if (head.kind == TokKind::Xi) return Term::var(aux_index(head));
    if (head.kind != TokKind::Ident) {
      throw ParseError("expected a variable or symbol", head.offset);
    }
    if (is_var_shape(head.text)) return Term::var(var_index_of(head));
    auto [symbol, color] = symbol_head(head);
    (void)color;
    std::vector<Term> args =
        argument_list<Term>(symbol, head.offset, [this] { return term(); });
    return Term::app(symbol, std::move(args));
  }

  ColoredTerm colored_term() {
    const Token head = lexer_.take();
    if (head.kind == TokKind::Xi) return ColoredTerm::var(aux_index(head));
    if (head.kind != TokKind::Ident) {
      throw ParseError("expected a variable or symbol", head.offset);
    }
    if (is_var_shape(head.text)) return ColoredTerm::var(var_index_of(head));
    auto [symbol, color] = symbol_head(head);
    std::vector<ColoredTerm> args = argument_list<ColoredTerm>(
        symbol, head.offset, [this] { return colored_term(); });
    return ColoredTerm::app(symbol, color, std::move(args));
  }

  Lexer lexer_;
  const Signature& sig_;
  bool colored_;
  ParseOptions opts_;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& sig, ParseOptions opts) {
  return TermParser(text, sig, /*colored=*/false, opts).parse_plain();
}

ColoredTerm parse_colored_term(std::string_view text, const Signature& sig,
                               ParseOptions opts) {
  return TermParser(text, sig, /*colored=*/true, opts).parse_colored();
}

Position parse_position(std::string_view text, const Signature& sig) {
  // Trim surrounding whitespace.
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  const std::string_view body = text.substr(b, e - b);

  if (body.empty() || body == "\xce\xb5") return Position::root();

  std::vector<int> path;
  auto push_entry = [&](long value, std::size_t offset) {
    if (value < 1) throw ParseError("position entries must be at least 1", offset);
    if (value > sig.max_arity()) {
      throw ParseError("position entry " + std::to_string(value) +
                           " exceeds the maximum arity " + std::to_string(sig.max_arity()),
                       offset);
    }
    path.push_back(static_cast<int>(value));
  };

  if (body.find('.') != std::string_view::npos) {
    std::size_t i = 0;
    while (i <= body.size()) {
      std::size_t j = body.find('.', i);
      if (j == std::string_view::npos) j = body.size();
      if (j == i) throw ParseError("empty position entry", b + i);
      long v = 0;
      for (std::size_t k = i; k < j; ++k) {
        if (!is_digit(body[k])) {
          throw ParseError("position entries must be numeric", b + k);
        }
        v = v * 10 + (body[k] - '0');
        if (v > 1'000'000) throw ParseError("position entry too large", b + i);
      }
      push_entry(v, b + i);
      if (j == body.size()) break;
      i = j + 1;
      if (i == body.size()) throw ParseError("empty position entry", b + i);
    }
  } else {
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (!is_digit(body[i])) {
        throw ParseError("position entries must be numeric", b + i);
      }
      push_entry(body[i] - '0', b + i);
    }
  }
  return Position(std::move(path));
}

namespace {

std::pair<std::string_view, std::string_view> split_equation(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ParseError("expected '=' between the two sides", text.size());
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

}  // namespace

Identity parse_identity(std::string_view text, const Signature& sig) {
  auto [lhs, rhs] = split_equation(text);
  return Identity{parse_term(lhs, sig), parse_term(rhs, sig)};
}

ColoredIdentity parse_colored_identity(std::string_view text, const Signature& sig) {
  auto [lhs, rhs] = split_equation(text);
  return ColoredIdentity{parse_colored_term(lhs, sig), parse_colored_term(rhs, sig)};
}

}  // namespace mhyp
