#pragma once

#include <stdexcept>
#include <string>

namespace bardina {

/// Invalid run configuration; `field` names the offending key as
/// "[section] key".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Non-finite values or a violated step-size cap during time integration.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double time, const std::string& message)
      : std::runtime_error(message), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace bardina
