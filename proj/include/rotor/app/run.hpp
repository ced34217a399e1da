#pragma once

// Mode dispatch for the command-line front end.

#include <cstddef>
#include <functional>

#include "rotor/app/config.hpp"
#include "rotor/app/output.hpp"
#include "rotor/error.hpp"

namespace rotor::app {

/// 1 for validation-type errors, 2 for runtime/numeric ones.
int exit_code_for(ErrorKind kind) noexcept;

/// Runs the configured mode, writes its files and manifest.json into
/// config.output_dir and returns the manifest. Module errors do not
/// propagate: they are recorded in the manifest with a nonzero exit code.
Manifest run(const RunConfig& config);

/// Calls job(i) for i in [0, count) on up to `workers` threads. Exceptions
/// are collected per job; the one with the lowest index is rethrown after
/// all jobs finish.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& job);

}  // namespace rotor::app
