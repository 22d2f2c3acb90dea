#pragma once

#include <stdexcept>
#include <string>

namespace lavatube {

/// Argument outside the operation's domain (negative density, sample time
/// past the end of a sol, unknown phase code, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Simulation state that can never arise from valid transitions.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class CapacityExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class OverMass : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IllegalTransition : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Wraps an error raised inside one model so the caller can see which
/// module produced it.
class ModuleError : public std::runtime_error {
public:
  ModuleError(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
  const std::string& module() const noexcept { return module_; }

private:
  std::string module_;
};

} // namespace lavatube
