#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace fwave {

/// Failure categories surfaced by the library. Messages carry the witnessing
/// abscissa when one exists, so callers can report the offending point.
enum class Errc {
  not_even,
  slope_too_large,
  not_involution,
  domain_mismatch,
  zero_scale,
  degenerate_family,
  empty_grid,
  out_of_range,
  out_of_domain,
  non_monotone,
  no_sign_change,
  convergence_failure,
  residual_failure,
  inadmissible_problem,
  unknown_fixture,
  missing_closed_form,
  bad_params,
};

const char* errc_name(Errc code);

class Error final : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail,
        std::optional<double> witness = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<double> witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::optional<double> witness_;
};

[[noreturn]] void raise(Errc code, const std::string& detail,
                        std::optional<double> witness = std::nullopt);

}  // namespace fwave
