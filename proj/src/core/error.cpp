#include "rotor/error.hpp"

namespace rotor {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::size_mismatch: return "size_mismatch";
    case ErrorKind::not_normalized: return "not_normalized";
    case ErrorKind::tail_mass: return "tail_mass";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::separatrix: return "separatrix";
    case ErrorKind::no_root: return "no_root";
    case ErrorKind::non_convergence: return "non_convergence";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

bool is_validation_kind(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation:
    case ErrorKind::size_mismatch:
    case ErrorKind::not_normalized:
      return true;
    default:
      return false;
  }
}

}  // namespace rotor
