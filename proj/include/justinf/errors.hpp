#pragma once

#include <stdexcept>
#include <string>

namespace justinf {

// Error taxonomy shared by the library and the CLI. Every error carries a
// machine-readable kind; the CLI maps kinds to exit codes (domain -> 1,
// resource -> 2, parse -> 3).

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// A precondition of an operation does not hold for the given input.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error("domain", message) {}
};

// A configured cap (depth, level, enumeration size) would be exceeded.
// Operations fail loudly instead of thrashing.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& message) : Error("resource", message) {}
};

// Malformed external input (words, JSON payloads, CLI arguments).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

}  // namespace justinf
