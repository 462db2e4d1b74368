#pragma once

#include <stdexcept>
#include <string>

namespace emhd {

/// Bad user input: config keys, parameter ranges, representability limits.
/// The CLI maps this family to exit code 2.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite samples reached a transform. Distinct from plain validation
/// so the integrator can recognize mid-step overflow as a blow-up.
class NonFiniteFieldError : public ValidationError {
  public:
    explicit NonFiniteFieldError(const std::string& what) : ValidationError(what) {}
};

/// Integration produced non-finite fields. Expected behaviour for a
/// supercritical system; carries the time of failure. CLI exit code 3.
class BlowUpError : public std::runtime_error {
  public:
    BlowUpError(double t, const std::string& what) : std::runtime_error(what), time_(t) {}
    double time() const { return time_; }

  private:
    double time_;
};

/// Snapshot / CSV file problems, with byte offsets where applicable.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace emhd
