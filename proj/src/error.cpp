#include "hexslide/error.hpp"

namespace hexslide {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_params: return "invalid-params";
    case ErrorCode::disconnected_after_trim: return "disconnected-after-trim";
    case ErrorCode::cell_not_on_board: return "cell-not-on-board";
    case ErrorCode::illegal_move: return "illegal-move";
    case ErrorCode::hole_mismatch: return "hole-mismatch";
    case ErrorCode::label_mismatch: return "label-mismatch";
    case ErrorCode::board_mismatch: return "board-mismatch";
    case ErrorCode::board_not_parallelogram: return "board-not-parallelogram";
    case ErrorCode::hole_count: return "hole-count";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::division_not_exact: return "division-not-exact";
    case ErrorCode::holes_unreachable: return "holes-unreachable";
    case ErrorCode::hypotheses_violated: return "hypotheses-violated";
    case ErrorCode::too_large: return "too-large";
    case ErrorCode::malformed_input: return "malformed-input";
  }
  return "error";
}

}  // namespace hexslide
