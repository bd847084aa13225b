#pragma once

#include <stdexcept>
#include <string>

namespace otcnet {

/// Broad failure category; the CLI maps each one to an exit code.
enum class ErrorKind {
    Config,   ///< invalid configuration or arguments
    Data,     ///< malformed or inconsistent input files
    Numeric,  ///< non-finite values, rank deficiency, divergence
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class DataError : public Error {
  public:
    explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

/// Malformed file content; carries the 1-based line and the offending field.
class ParseError : public DataError {
  public:
    ParseError(const std::string& file, std::size_t line, const std::string& field, const std::string& msg)
        : DataError(file + ":" + std::to_string(line) + ": field '" + field + "': " + msg),
          line_(line),
          field_(field) {}
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

  private:
    std::size_t line_;
    std::string field_;
};

/// Structurally wrong file: missing columns, wrong dimensions.
class SchemaError : public DataError {
  public:
    explicit SchemaError(const std::string& what) : DataError(what) {}
};

class NumericError : public Error {
  public:
    explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

}  // namespace otcnet
