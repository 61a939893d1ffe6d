#pragma once

#include <stdexcept>
#include <string>

namespace wpcn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A user can never gather enough energy to deliver its demand.
class InfeasibleUser : public Error {
public:
  InfeasibleUser(int user_id, const std::string& what, int position = -1)
      : Error(what), user_id_(user_id), position_(position) {}

  int user_id() const noexcept { return user_id_; }
  /// Slot index inside the evaluated order, -1 when not evaluated inside an order.
  int position() const noexcept { return position_; }

private:
  int user_id_;
  int position_;
};

/// Closed-form evaluation failed its residual validation.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// No start time lets the user transmit at the power cap.
class NeverAffordable : public Error {
public:
  using Error::Error;
};

class SizeCapExceeded : public Error {
public:
  using Error::Error;
};

class StatisticalFailure : public Error {
public:
  using Error::Error;
};

/// Malformed configuration or instance input. `field` names the offending key
/// and `line` is 1-based when known, 0 otherwise.
class ConfigError : public Error {
public:
  ConfigError(const std::string& what, std::string field = {}, int line = 0)
      : Error(what), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

private:
  std::string field_;
  int line_;
};

}  // namespace wpcn
