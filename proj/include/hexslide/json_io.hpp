#pragma once

#include <optional>

#include <json.hpp>

#include "hexslide/bigint.hpp"
#include "hexslide/configuration.hpp"
#include "hexslide/hexboard.hpp"
#include "hexslide/patching.hpp"
#include "hexslide/puzzlegraph.hpp"
#include "hexslide/theorems.hpp"

namespace hexslide {

using Json = nlohmann::json;

// All readers throw Error(malformed_input) on shape errors; board
// construction errors keep their own codes.

Json to_json(Cell c);
Cell cell_from_json(const Json& j);

// {"family":"parallelogram","m1":3,"m2":4}, {"family":"flower","m":3} or
// {"family":"explicit","cells":[[q,r],...]}.
Json to_json(const Board& b);
Board board_from_json(const Json& j);

// {"board":...,"cells":[[q,r,label],...]} in canonical cell order.
Json to_json(const Configuration& c);
// `board` overrides (or stands in for) the embedded board.
Configuration configuration_from_json(const Json& j, const std::optional<Board>& board = {});

Json to_json(const SlideMove& m);
// {"from":[q,r],"to":[q,r]}; the witness is looked up on `c`.
SlideMove move_from_json(const Json& j, const Configuration& c);

// Integers that fit in 64 bits stay numbers, larger ones become strings.
Json to_json(const BigInt& v);

Json to_json(const SolvabilityVerdict& v);
Json to_json(const ComponentSummary& s, const BigInt& components);

Json to_json(const PatchDerivation& d);
PatchDerivation derivation_from_json(const Json& j);

}  // namespace hexslide
