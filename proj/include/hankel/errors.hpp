#pragma once

#include <stdexcept>
#include <string>

namespace hankel {

/// Base class of all library errors.
///
/// exit_code() maps the error category onto the CLI exit-code contract:
/// 2 for structural or definiteness rejections, 3 for numerical
/// non-convergence.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
  virtual int exit_code() const noexcept { return 2; }
};

/// Input sizes are inconsistent: wrong generator length, wrong vector
/// length, incompatible order/dimension parameters.
class dimension_error : public error {
 public:
  using error::error;
};

/// The input violates a structural requirement: asymmetric matrix, odd
/// order where an even one is required, coincident interpolation nodes,
/// no associated Hankel matrix, and so on.
class structure_error : public error {
 public:
  using error::error;
};

/// A matrix required to be positive semidefinite has an eigenvalue below
/// tolerance.  Carries the offending eigenvalue as a witness.
class not_psd_error : public structure_error {
 public:
  not_psd_error(const std::string& what, double witness)
      : structure_error(what), witness_(witness) {}
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

/// An iterative method failed to reach its tolerance.  Carries the last
/// residual seen, for diagnostics.
class numeric_error : public error {
 public:
  numeric_error(const std::string& what, double residual)
      : error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }
  int exit_code() const noexcept override { return 3; }

 private:
  double residual_;
};

}  // namespace hankel
