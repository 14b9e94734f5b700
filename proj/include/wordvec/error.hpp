#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordvec {

// Base of every error the library throws. The CLI maps subclasses to exit
// codes: input/config problems exit 2, domain failures exit 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. The message carries "source:line: ".
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid UTF-8 in text input.
class DecodeError : public Error {
 public:
  explicit DecodeError(std::size_t offset)
      : Error("invalid UTF-8 at byte offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Argument outside an operation's domain (e.g. nonpositive frequency,
// undefined correlation).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite values produced during training.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace wordvec
