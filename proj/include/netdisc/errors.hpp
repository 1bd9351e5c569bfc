#pragma once

#include <stdexcept>
#include <string>

namespace netdisc {

/// Malformed or inconsistent caller input (bad dimensions, invalid graph, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed to produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace netdisc
