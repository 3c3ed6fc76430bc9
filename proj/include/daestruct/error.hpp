#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace daestruct {

enum class ErrorKind {
  StructurallySingular,
  EmptyColumn,
  SyntaxError,
  UndeclaredVariable,
  NonSquare,
  FormatError,
  DuplicateEntry,
  IndexOutOfRange,
  DimensionMismatch,
  NegativeParameter,
  InvalidBlockStructure,
  TooLarge,
  Overflow,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The kind lets callers map
/// failures (e.g. to CLI exit codes) without catching each subclass.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class StructurallySingular : public Error {
 public:
  explicit StructurallySingular(const std::string& detail = "no transversal")
      : Error(ErrorKind::StructurallySingular, "structurally singular: " + detail) {}
};

class EmptyColumn : public Error {
 public:
  explicit EmptyColumn(std::size_t col)
      : Error(ErrorKind::EmptyColumn,
              "column " + std::to_string(col) + " has no finite entry"),
        col_(col) {}
  std::size_t column() const noexcept { return col_; }

 private:
  std::size_t col_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, const std::string& message)
      : Error(ErrorKind::SyntaxError, std::to_string(line) + ":" + std::to_string(col) +
                                          ": syntax error: " + message),
        line_(line),
        col_(col) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return col_; }

 private:
  int line_;
  int col_;
};

class UndeclaredVariable : public Error {
 public:
  explicit UndeclaredVariable(const std::string& name)
      : Error(ErrorKind::UndeclaredVariable, "undeclared variable '" + name + "'"),
        name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class NonSquare : public Error {
 public:
  NonSquare(std::size_t equations, std::size_t variables)
      : Error(ErrorKind::NonSquare, "system is not square: " + std::to_string(equations) +
                                        " equations, " + std::to_string(variables) +
                                        " variables"),
        equations_(equations),
        variables_(variables) {}
  std::size_t equations() const noexcept { return equations_; }
  std::size_t variables() const noexcept { return variables_; }

 private:
  std::size_t equations_;
  std::size_t variables_;
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message)
      : Error(ErrorKind::FormatError, "format error: " + message) {}
};

class DuplicateEntry : public Error {
 public:
  DuplicateEntry(std::size_t row, std::size_t col)
      : Error(ErrorKind::DuplicateEntry, "duplicate entry at (" + std::to_string(row) +
                                             ", " + std::to_string(col) + ")") {}
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(const std::string& message)
      : Error(ErrorKind::IndexOutOfRange, "index out of range: " + message) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& message)
      : Error(ErrorKind::DimensionMismatch, "dimension mismatch: " + message) {}
};

class NegativeParameter : public Error {
 public:
  explicit NegativeParameter(std::size_t index)
      : Error(ErrorKind::NegativeParameter,
              "parameter component " + std::to_string(index) + " is negative") {}
};

class InvalidBlockStructure : public Error {
 public:
  explicit InvalidBlockStructure(const std::string& message)
      : Error(ErrorKind::InvalidBlockStructure, "invalid block structure: " + message) {}
};

class TooLarge : public Error {
 public:
  TooLarge(std::size_t n, std::size_t limit)
      : Error(ErrorKind::TooLarge, "n = " + std::to_string(n) +
                                       " exceeds the exhaustive-search limit " +
                                       std::to_string(limit)) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& where)
      : Error(ErrorKind::Overflow, "integer overflow in " + where) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error(ErrorKind::InvalidArgument, message) {}
};

}  // namespace daestruct
