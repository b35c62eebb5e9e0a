#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "testlab/metrics/ast.hpp"
#include "testlab/metrics/token.hpp"

namespace testlab::metrics {

/// Parses the supported Java subset: classes, interfaces, enums, records,
/// annotation types, fields, methods, constructors, nested and anonymous
/// classes, lambdas and the standard statements and expressions. Type
/// arguments are parsed and kept but carry no metric weight; annotations are
/// skipped. Throws ParseError at the first unsupported construct.
///
/// `code` must be comment-free (see TokenStream::code_tokens).
CompilationUnit parse_java(const std::vector<Token>& code);

struct SourceFile {
  std::string path;  // relative to the project root, '/'-separated
  TokenStream stream;
  std::vector<Token> code;
  CompilationUnit unit;
};

/// tokenize + parse; errors carry `path` in their message.
SourceFile parse_source(std::string path, std::string_view text);

}  // namespace testlab::metrics
