#pragma once

#include <stdexcept>
#include <string>

namespace mvl2e {

// Precondition violated by the caller (bad shapes, negative thresholds, ...).
struct ContractViolation : std::invalid_argument {
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// More eigenpairs requested than the (non-null) spectrum provides.
struct InsufficientSpectrum : std::runtime_error {
  explicit InsufficientSpectrum(const std::string& what) : std::runtime_error(what) {}
};

// A local geometry made the constrained solve meaningless (e.g. all
// neighbor weights cancel).
struct DegenerateGeometry : std::runtime_error {
  explicit DegenerateGeometry(const std::string& what) : std::runtime_error(what) {}
};

// Two inputs that must describe the same instance disagree.
struct InconsistentInput : std::invalid_argument {
  explicit InconsistentInput(const std::string& what) : std::invalid_argument(what) {}
};

// File loading / parsing problems, with the offending location in the message.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mvl2e
