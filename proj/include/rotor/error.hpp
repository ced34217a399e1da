#pragma once

#include <stdexcept>
#include <string>

namespace rotor {

/// Failure categories surfaced by every module. The C API and the CLI map
/// these onto status and exit codes.
enum class ErrorKind {
  validation,       ///< bad parameter or precondition
  size_mismatch,    ///< inconsistent vector/grid sizes
  not_normalized,   ///< state norm off by more than the step tolerance
  tail_mass,        ///< momentum truncation leaked probability
  divergence,       ///< |k| >= 1 in the complete elliptic integral
  separatrix,       ///< pendulum trajectory on the separatrix (k = +-1)
  no_root,          ///< caustic equation bracket without sign change
  non_convergence,  ///< quadrature did not settle between refinements
  io,               ///< file could not be read or written
};

const char* to_string(ErrorKind kind) noexcept;

/// True for the kinds that represent caller mistakes (exit code 1) rather
/// than numerical or runtime failures (exit code 2).
bool is_validation_kind(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rotor
