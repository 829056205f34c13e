#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace revgrp {

// Malformed input text. `position` is a 0-based character offset for
// single-line inputs (specs, matrix literals) and a 1-based line number
// for claim files.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Structurally valid input with a parameter outside the documented range,
// e.g. GL over an even modulus.
class RangeError : public std::runtime_error {
 public:
  explicit RangeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Generator closure (or a known family order) exceeds the element cap.
class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(const std::string& msg, std::uint64_t limit)
      : std::runtime_error(msg), limit_(limit) {}

  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
};

// A Cayley table that is not a group table (Latin-square or associativity
// failure, bad identity row, malformed file).
class InvalidTable : public std::runtime_error {
 public:
  explicit InvalidTable(const std::string& msg) : std::runtime_error(msg) {}
};

// Singular matrix where an invertible one is required.
class SingularMatrix : public std::runtime_error {
 public:
  explicit SingularMatrix(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace revgrp
