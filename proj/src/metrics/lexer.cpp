#include <algorithm>
#include <array>
#include <cctype>

#include "testlab/common/error.hpp"
#include "testlab/metrics/token.hpp"

namespace testlab::metrics {

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",       "case",      "catch",
    "char",     "class",      "const",     "continue",  "default",    "do",        "double",
    "else",     "enum",       "extends",   "final",     "finally",    "float",     "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",       "interface",
    "long",     "native",     "new",       "package",   "private",    "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",      "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",        "void",      "volatile",
    "while"};

constexpr std::array<std::string_view, 8> kPrimitives = {"boolean", "byte",  "char", "short",
                                                         "int",     "long",  "float", "double"};

// Longest match first.
constexpr std::array<std::string_view, 38> kPunctuation = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=",  "/=", "&=", "|=", "^=", "%=", "<<", ">>", "(",
    ")",    "{",   "}",   "[",   "]",   ";",  ",",  ".",  "@",  "=",  ">",  "<"};

constexpr std::string_view kSingleOperators = "!~?:+-*/&|^%";

bool is_separator(std::string_view p) {
  return p == "(" || p == ")" || p == "{" || p == "}" || p == "[" || p == "]" || p == ";" ||
         p == "," || p == "." || p == "..." || p == "@" || p == "::";
}

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  TokenStream run() {
    TokenStream out;
    for (;;) {
      std::string leading = take_whitespace();
      if (pos_ >= src_.size()) {
        out.trailing = std::move(leading);
        return out;
      }
      const std::size_t start = pos_;
      const std::size_t line = line_;
      const std::size_t col = col_;
      const TokenKind kind = scan_token();
      out.tokens.push_back(
          Token{kind, std::string(src_.substr(start, pos_ - start)), line, col, std::move(leading)});
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if (c == '\r') {
      if (peek() != '\n') {
        ++line_;
        col_ = 1;
      }
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  std::string take_whitespace() {
    const std::size_t start = pos_;
    while (pos_ < src_.size()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        advance();
      } else {
        break;
      }
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& why) const {
    throw LexError(line, col, why);
  }

  TokenKind scan_token() {
    const char c = peek();
    const auto uc = static_cast<unsigned char>(c);
    if (c == '/' && peek(1) == '/') {
      while (pos_ < src_.size() && peek() != '\n' && peek() != '\r') advance();
      return TokenKind::Comment;
    }
    if (c == '/' && peek(1) == '*') {
      const auto line = line_, col = col_;
      advance();
      advance();
      for (;;) {
        if (pos_ >= src_.size()) fail(line, col, "unterminated comment");
        if (peek() == '*' && peek(1) == '/') {
          advance();
          advance();
          return TokenKind::Comment;
        }
        advance();
      }
    }
    if (ident_start(uc)) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(peek()))) advance();
      const auto word = src_.substr(start, pos_ - start);
      if (word == "true" || word == "false" || word == "null") return TokenKind::Literal;
      return is_java_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
    }
    if (std::isdigit(uc) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      scan_number();
      return TokenKind::Literal;
    }
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') {
        scan_text_block();
      } else {
        scan_quoted('"', "string literal");
      }
      return TokenKind::Literal;
    }
    if (c == '\'') {
      scan_quoted('\'', "character literal");
      return TokenKind::Literal;
    }
    for (std::string_view p : kPunctuation) {
      if (src_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        return is_separator(p) ? TokenKind::Separator : TokenKind::Operator;
      }
    }
    if (kSingleOperators.find(c) != std::string_view::npos) {
      advance();
      return TokenKind::Operator;
    }
    fail(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void scan_number() {
    auto digits = [&](auto pred) {
      while (pos_ < src_.size() && (pred(static_cast<unsigned char>(peek())) || peek() == '_')) {
        advance();
      }
    };
    auto is_dec = [](unsigned char ch) { return std::isdigit(ch) != 0; };
    auto is_hex = [](unsigned char ch) { return std::isxdigit(ch) != 0; };

    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      digits(is_hex);
      if (peek() == '.') {
        advance();
        digits(is_hex);
      }
      if (peek() == 'p' || peek() == 'P') {
        advance();
        if (peek() == '+' || peek() == '-') advance();
        digits(is_dec);
      }
    } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      digits(is_dec);
    } else {
      digits(is_dec);
      if (peek() == '.' && !ident_start(static_cast<unsigned char>(peek(1))) && peek(1) != '.') {
        advance();
        digits(is_dec);
      } else if (peek() == '.' && (peek(1) == 'e' || peek(1) == 'E' || peek(1) == 'f' ||
                                   peek(1) == 'F' || peek(1) == 'd' || peek(1) == 'D')) {
        advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        advance();
        if (peek() == '+' || peek() == '-') advance();
        digits(is_dec);
      }
    }
    const char s = peek();
    if (s == 'l' || s == 'L' || s == 'f' || s == 'F' || s == 'd' || s == 'D') advance();
    if (ident_part(static_cast<unsigned char>(peek()))) {
      fail(line_, col_, "malformed numeric literal");
    }
  }

  void scan_quoted(char quote, const char* what) {
    const auto line = line_, col = col_;
    advance();
    for (;;) {
      if (pos_ >= src_.size() || peek() == '\n' || peek() == '\r') {
        fail(line, col, std::string("unterminated ") + what);
      }
      const char ch = peek();
      advance();
      if (ch == '\\') {
        if (pos_ >= src_.size()) fail(line, col, std::string("unterminated ") + what);
        advance();
      } else if (ch == quote) {
        return;
      }
    }
  }

  void scan_text_block() {
    const auto line = line_, col = col_;
    advance();
    advance();
    advance();
    while (peek() == ' ' || peek() == '\t' || peek() == '\f') advance();
    if (peek() != '\n' && peek() != '\r') fail(line, col, "text block opening must end the line");
    for (;;) {
      if (pos_ >= src_.size()) fail(line, col, "unterminated text block");
      if (peek() == '\\') {
        advance();
        if (pos_ < src_.size()) advance();
        continue;
      }
      if (peek() == '"' && peek(1) == '"' && peek(2) == '"') {
        advance();
        advance();
        advance();
        return;
      }
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Operator: return "operator";
    case TokenKind::Separator: return "separator";
    case TokenKind::Literal: return "literal";
    case TokenKind::Comment: return "comment";
  }
  return "?";
}

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_primitive_type(std::string_view word) {
  return std::find(kPrimitives.begin(), kPrimitives.end(), word) != kPrimitives.end();
}

std::string TokenStream::reconstruct() const {
  std::string out;
  for (const auto& t : tokens) {
    out += t.leading;
    out += t.text;
  }
  out += trailing;
  return out;
}

std::vector<Token> TokenStream::code_tokens() const {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.kind != TokenKind::Comment) out.push_back(t);
  }
  return out;
}

TokenStream tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace testlab::metrics
