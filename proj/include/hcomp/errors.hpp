#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcomp {

// Invalid caller-supplied parameter (probability out of range, bad n, ...).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// An exact routine was asked to work past its size cap.
class CapacityError : public std::runtime_error {
public:
  CapacityError(const std::string& what, std::size_t size)
      : std::runtime_error(what + " (size " + std::to_string(size) + ")"), size_(size) {}

  std::size_t size() const noexcept { return size_; }

private:
  std::size_t size_;
};

// A documented precondition of an operation was violated.
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Malformed graph text input. line() is 1-based; 0 means "whole input".
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace hcomp
