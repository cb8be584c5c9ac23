#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace equilef {

// Malformed or inconsistent input. `where()` names the offending location:
// a slash-separated path into the scenario file ("lattice/action/1"), or an
// operation name.
class InputError : public std::runtime_error {
 public:
  InputError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what),
        where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// A computed quantity broke an identity that must hold exactly
// (non-integral virtual character, d*d != 0, ...). Always a bug or a
// counterexample, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace equilef
