#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nomamec {

/// A UD/RRB/AP reference that is not part of the slice or instance.
class InvalidAssignment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A link (UD->AP or AP->MEC) that the channel state does not describe.
class InvalidTopology : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A task whose upload rate is zero, so it can never reach its AP.
class InfeasibleUpload : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive search refused because the graph is too large.
class SizeGuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Configuration document problem. `field()` names the offending key, or is
/// empty for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nomamec
