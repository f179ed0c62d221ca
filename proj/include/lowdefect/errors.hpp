#pragma once

#include <stdexcept>
#include <string>

namespace lowdefect {

// Error taxonomy shared by the whole library.  The CLI maps kinds onto its
// exit-code contract (usage/parse -> 2, range/resource -> 3).
class Error : public std::runtime_error {
 public:
  enum class Kind {
    Domain,      // argument outside the mathematical domain (limit = 0, ...)
    Range,       // query outside a table or tuple arity mismatch
    Contract,    // precondition violation (non-minimal variable, D < ||c||, ...)
    Structural,  // expression/polynomial is not low-defect
    Parse,       // malformed text input
    Resource,    // enumeration budget exceeded
    Build,       // table entry exceeded storage width (cannot happen)
    Io,          // file could not be opened/read/written
  };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : Error(Kind::Parse, message + " at line " + std::to_string(line) +
                               ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lowdefect
