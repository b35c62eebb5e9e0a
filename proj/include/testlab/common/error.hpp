#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace testlab {

/// Coarse failure classes. The C API maps each one onto a status code.
enum class ErrorKind {
  Io,
  Lex,
  Parse,
  Schema,
  Data,
  InvalidArgument,
  NotFound,
  Numeric,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(ErrorKind::Schema, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::InvalidArgument, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error(ErrorKind::NotFound, what) {}
};

/// Error with a 1-based source position.
class SourceError : public Error {
 public:
  SourceError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& reason)
      : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " + reason),
        line_(line),
        column_(column),
        reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

class LexError : public SourceError {
 public:
  LexError(std::size_t line, std::size_t column, const std::string& reason)
      : SourceError(ErrorKind::Lex, line, column, reason) {}
};

class ParseError : public SourceError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : SourceError(ErrorKind::Parse, line, column, reason) {}
};

// Named failures from the individual modules.
struct SchemaMismatch : SchemaError { using SchemaError::SchemaError; };
struct ManifestMismatch : SchemaError { using SchemaError::SchemaError; };
struct MissingMetric : SchemaError { using SchemaError::SchemaError; };
struct EmptyCriteria : DataError { using DataError::DataError; };
struct ZeroSuite : DataError { using DataError::DataError; };
struct EmptyComponent : DataError { using DataError::DataError; };
struct KeyMismatch : DataError { using DataError::DataError; };
struct UnknownVariant : InvalidArgument { using InvalidArgument::InvalidArgument; };
struct InvalidParams : InvalidArgument { using InvalidArgument::InvalidArgument; };
struct DimensionMismatch : InvalidArgument { using InvalidArgument::InvalidArgument; };
struct DegenerateVariance : NumericError { using NumericError::NumericError; };
struct ConstantInput : NumericError { using NumericError::NumericError; };
struct EmptyGraph : InvalidArgument { using InvalidArgument::InvalidArgument; };
struct ClassNotFound : NotFound { using NotFound::NotFound; };

}  // namespace testlab
