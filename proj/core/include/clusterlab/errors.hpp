#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace clusterlab {

/// Bad parameters or inputs that violate a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text, JSON or CSV input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured node, state or retry budget ran out before the job finished.
/// `partial` holds whatever count was reached; it is never a valid answer.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, std::uint64_t partial)
      : std::runtime_error(what), partial_(partial) {}
  std::uint64_t partial() const noexcept { return partial_; }

 private:
  std::uint64_t partial_;
};

/// A construction that is promised to yield a valid cluster did not.
/// These are findings about a hypothesis (a user U/V pair, a transform),
/// not usage errors.
class AxiomViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent evaluation routes disagreed.
class InternalMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace clusterlab
