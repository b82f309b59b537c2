#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace loadbal {

/// Malformed input or an argument outside an operation's domain.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No total assignment exists (a client cannot be served).
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::int64_t client_vertex, const std::string& why)
      : std::runtime_error(why), client_vertex_(client_vertex) {}

  std::int64_t client_vertex() const noexcept { return client_vertex_; }

 private:
  std::int64_t client_vertex_;
};

/// The oracle refused to run because a documented precondition failed.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace loadbal
