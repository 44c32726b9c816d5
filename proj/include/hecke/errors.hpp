#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Command-level error classes; the CLI maps these onto its exit-code contract.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

// Numeric precondition failures (exit code 3).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& m) : std::runtime_error(m) {}
};

struct PoleAtPoint : NumericError {
  explicit PoleAtPoint(const std::string& m) : NumericError(m) {}
};

struct SingularNormalization : NumericError {
  explicit SingularNormalization(const std::string& m) : NumericError(m) {}
};

struct SpectrumGapViolation : NumericError {
  explicit SpectrumGapViolation(const std::string& m) : NumericError(m) {}
};

// Rank caps and other out-of-contract requests (exit code 4).
struct Unsupported : std::runtime_error {
  explicit Unsupported(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace hecke
