#pragma once

#include <stdexcept>
#include <string>

namespace regretlab {

/// Caller broke a documented precondition or API contract.
struct ContractViolation : std::logic_error {
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// A numerical routine left its tolerance envelope (singular solve, no convergence).
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// An observation had zero likelihood under every atom of a belief.
struct InconsistentObservation : std::runtime_error {
  explicit InconsistentObservation(const std::string& what) : std::runtime_error(what) {}
};

/// Config or input-file validation failure. `path` points at the offending field.
struct ConfigError : std::runtime_error {
  std::string path;
  ConfigError(std::string path_, const std::string& what)
    : std::runtime_error(path_ + ": " + what), path(std::move(path_)) {}
};

/// A statistical check did not have enough samples to say anything.
struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace regretlab
