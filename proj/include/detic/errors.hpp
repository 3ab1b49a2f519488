#pragma once

#include <stdexcept>
#include <string>

namespace detic {

/// Malformed or inconsistent user input (files, flags).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized construction kept failing a rank check; a larger field
/// usually helps.
class budget_exhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested rate pair admits no common/private split.
class infeasible_rate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree.
class verification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace detic
