#ifndef TCSP_ERROR_HPP
#define TCSP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcsp {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed a documented size cap.
class SizeLimitError : public Error {
 public:
  SizeLimitError(const std::string& what, std::size_t requested, std::size_t limit)
      : Error(what + " (requested " + std::to_string(requested) + ", limit " +
              std::to_string(limit) + ")"),
        requested_(requested),
        limit_(limit) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t requested_;
  std::size_t limit_;
};

/// Arity of a tuple, index set or constraint does not fit its relation.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// A relation symbol or library name is not known.
class UnknownSymbolError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `line` is 1-based (0 when not line-oriented),
/// `column` is a 0-based offset into the line or string.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    std::string where = line > 0 ? "line " + std::to_string(line) + ", column " +
                                       std::to_string(column)
                                 : "position " + std::to_string(column);
    return where + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// An algorithm was called on an input that violates its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The template falls in the NP-complete case and no brute-force fallback was requested.
class NpHardTemplateError : public Error {
 public:
  using Error::Error;
};

}  // namespace tcsp

#endif  // TCSP_ERROR_HPP
