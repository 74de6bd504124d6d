#pragma once

#include <stdexcept>
#include <string>

namespace pamlab {

// Exit-code taxonomy used by the CLI: 2 usage, 3 numeric/convergence,
// 4 size/cap, 5 schema.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct SizeError : std::length_error {
  using std::length_error::length_error;
};

struct StateError : std::logic_error {
  using std::logic_error::logic_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GapViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptinessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pamlab
