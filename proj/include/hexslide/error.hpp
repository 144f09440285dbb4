#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hexslide {

enum class ErrorCode {
  invalid_params,
  disconnected_after_trim,
  cell_not_on_board,
  illegal_move,
  hole_mismatch,
  label_mismatch,
  board_mismatch,
  board_not_parallelogram,
  hole_count,
  budget_exceeded,
  division_not_exact,
  holes_unreachable,
  hypotheses_violated,
  too_large,
  malformed_input,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code so the
// CLI and the HTTP layer can map it onto exit codes / status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hexslide
