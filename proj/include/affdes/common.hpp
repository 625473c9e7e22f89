#ifndef AFFDES_COMMON_HPP
#define AFFDES_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace affdes {

// Caller passed arguments that violate an operation's contract.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A mathematically undefined request (inverse of zero, radicand < 0, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Invalid family / configuration parameters.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed the state-count guard.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based offending line.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Default cap on explicit state enumeration (orbit closures, coverage
// tables). Overridable via the AFFDES_MAX_STATES environment variable.
std::uint64_t max_states();

}  // namespace affdes

#endif
