#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace testlab::metrics {

enum class TokenKind { Identifier, Keyword, Operator, Separator, Literal, Comment };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;    // 1-based
  std::size_t column;  // 1-based, in code points
  std::string leading; // whitespace between the previous token and this one
};

/// Lossless token sequence: concatenating `leading + text` of every token,
/// followed by `trailing`, reproduces the input byte for byte.
struct TokenStream {
  std::vector<Token> tokens;
  std::string trailing;

  std::string reconstruct() const;
  /// Tokens with comments removed, in order.
  std::vector<Token> code_tokens() const;
};

bool is_java_keyword(std::string_view word);
bool is_primitive_type(std::string_view word);

/// Java lexical grammar (JLS 3) over UTF-8 input. Unterminated comments,
/// string/char literals and text blocks raise LexError at their start.
TokenStream tokenize(std::string_view source);

}  // namespace testlab::metrics
