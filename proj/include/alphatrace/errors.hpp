#pragma once

#include <stdexcept>
#include <string>

namespace alphatrace {

// Invalid family parameters, malformed hypergraphs, bad CLI values.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called on an input that does not satisfy its
// structural precondition (e.g. no pendant edge at the chosen vertex).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Enumeration would exceed the configured order / edge budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed form was requested outside the range where it is known.
class UnsupportedClosedForm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace alphatrace
