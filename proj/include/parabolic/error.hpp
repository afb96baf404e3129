#pragma once

#include <stdexcept>
#include <string>

namespace parabolic {

enum class ErrorCode {
  invalid_params,
  unsupported_scalar,
  algebra_mismatch,
  degree_out_of_range,
  not_contact,
  not_in_p_plus,
  not_in_g_minus,
  zero_input,
  no_negative_representative,
  empty,
  unsupported_rep,
  not_diagonalizable,
  unbounded_compact_part,
  outside_cell,
  domain,
  schedule_too_short,
  divergent_adjoint,
  parse_error,
  validation_error,
  unknown_lemma,
  family_unsupported,
};

/// Kebab-case name used in reports and messages.
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace parabolic
