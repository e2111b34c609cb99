#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

namespace halcheck {

struct SourceLoc {
  int line = 0;
  int column = 0;

  friend auto operator<=>(const SourceLoc&, const SourceLoc&) = default;
};

inline std::string to_string(const SourceLoc& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

inline std::ostream& operator<<(std::ostream& os, const SourceLoc& loc) { return os << to_string(loc); }

// Base for every error the library reports to callers.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Lexical or grammatical error in a catalog file or a mini-C program.
class SyntaxError : public Error {
public:
  SyntaxError(SourceLoc loc, const std::string& what)
      : Error(to_string(loc) + ": " + what), loc_(loc), message_(what) {}

  SourceLoc location() const { return loc_; }
  const std::string& message() const { return message_; }

private:
  SourceLoc loc_;
  std::string message_;
};

// Well-formed catalog text that breaks a catalog invariant.
class CatalogError : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

// Program shapes the checker refuses: recursion, missing main, duplicates.
class UnsupportedProgram : public Error {
public:
  using Error::Error;
};

class PathCapExceeded : public Error {
public:
  using Error::Error;
};

}  // namespace halcheck
