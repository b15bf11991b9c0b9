#pragma once

#include <stdexcept>
#include <string>

namespace sgnet {

// Base error for contract violations anywhere in the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input-format error carrying a 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline void check(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

}  // namespace detail

}  // namespace sgnet
