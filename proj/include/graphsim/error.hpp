#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphsim {

// Bad user input: malformed files, invalid arguments, violated preconditions.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed text input; carries the 1-based line number.
class parse_error : public input_error {
public:
  parse_error(std::size_t line, const std::string& what)
    : input_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// The iterated operator annihilates the start vector (spectral radius 0).
class zero_operator_error : public input_error {
public:
  using input_error::input_error;
};

// Index arithmetic would exceed the platform range or a documented size cap.
class size_error : public input_error {
public:
  using input_error::input_error;
};

}  // namespace graphsim
