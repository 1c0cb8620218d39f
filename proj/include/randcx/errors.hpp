#pragma once

#include <stdexcept>
#include <string>

namespace randcx {

/// Invalid parameters or inputs outside an operation's domain. CLI exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unparseable or structurally invalid input (bad facets, bad files, bad filtrations).
class MalformedInput : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A configured computational budget was exceeded. CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace randcx
