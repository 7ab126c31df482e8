#pragma once

#include <stdexcept>
#include <string>

namespace cheeger {

enum class Errc {
  invalid_body,
  invalid_region,
  not_convex,
  resolution_too_coarse,
  domain_violation,
  unsupported_order,
  convergence_failure,
  curvature_violation,
  crossing,
  unknown_example,
  parse_error,
  io_error,
};

const char* to_string(Errc code);

// Every failure in the library surfaces as this exception; `code()` tells
// callers which contract was violated.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

// Raised when an iterative solver hits its iteration cap; carries the last
// convergence measure so callers can report it.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(Errc::convergence_failure, what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

private:
  double residual_;
  int iterations_;
};

}  // namespace cheeger
