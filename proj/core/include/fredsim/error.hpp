#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fredsim {

enum class ErrorKind {
  config,
  invalid_argument,
  dimension_cap,
  truncation,
  shape_mismatch,
  singular_drive,
  degenerate_normal_mode,
  degenerate_branch,
  orthogonal_postselection,
  vanishing_branch,
  vanishing_photon_number,
  cutoff,
  instability,
  degenerate_steady_state,
  non_psd,
};

// Coarse grouping used to pick process exit codes.
enum class ErrorClass { parse, physics, numerical };

std::string_view kind_name(ErrorKind kind) noexcept;
ErrorClass error_class(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace fredsim
