#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cellang {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidAlphabet : public Error {
 public:
  using Error::Error;
};

/// A word or expression used a symbol outside the declared alphabet.
class UnknownLetter : public Error {
 public:
  explicit UnknownLetter(char letter)
      : Error(std::string("unknown letter '") + letter + "'"), letter_(letter) {}

  char letter() const noexcept { return letter_; }

 private:
  char letter_;
};

/// Regular expression syntax error; offset is a byte index into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& reason)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + reason),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Malformed automaton or rule file; line is 1-based.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MonoidCapExceeded : public Error {
 public:
  explicit MonoidCapExceeded(std::size_t cap)
      : Error("transition monoid exceeds cap of " + std::to_string(cap) + " actions"),
        cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class StateCapExceeded : public Error {
 public:
  using Error::Error;
};

class EnumerationCapExceeded : public Error {
 public:
  using Error::Error;
};

class WindowTooShort : public Error {
 public:
  using Error::Error;
};

}  // namespace cellang
