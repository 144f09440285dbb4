#include "hexslide/json_io.hpp"

#include <fmt/format.h>

#include "hexslide/error.hpp"

namespace hexslide {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::malformed_input, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(fmt::format("missing field \"{}\"", key));
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) malformed(fmt::format("field \"{}\" must be an integer", key));
  return v.get<int>();
}

std::vector<Cell> cells_from_json(const Json& j) {
  if (!j.is_array()) malformed("cell list must be an array");
  std::vector<Cell> out;
  for (const Json& c : j) out.push_back(cell_from_json(c));
  return out;
}

Json cells_to_json(std::span<const Cell> cells) {
  Json out = Json::array();
  for (Cell c : cells) out.push_back(to_json(c));
  return out;
}

}  // namespace

Json to_json(Cell c) { return Json::array({c.q, c.r}); }

Cell cell_from_json(const Json& j) {
  if (!j.is_array() || j.size() < 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    malformed("a cell is written [q, r]");
  return {j[0].get<int>(), j[1].get<int>()};
}

Json to_json(const Board& b) {
  const ShapeId& s = b.shape();
  Json j{{"family", std::string(to_string(s.family))}};
  switch (s.family) {
    case ShapeFamily::parallelogram:
    case ShapeFamily::trimmed_parallelogram:
      j["m1"] = s.m1;
      j["m2"] = s.m2;
      break;
    case ShapeFamily::triangle:
    case ShapeFamily::trimmed_triangle:
    case ShapeFamily::flower:
      j["m"] = s.m1;
      break;
    case ShapeFamily::explicit_cells:
      j["cells"] = cells_to_json(b.cells());
      break;
  }
  return j;
}

Board board_from_json(const Json& j) {
  if (!j.is_object()) malformed("board must be a JSON object");
  const Json& fam = field(j, "family");
  if (!fam.is_string()) malformed("board family must be a string");
  const auto family = parse_shape_family(fam.get<std::string>());
  if (!family) malformed(fmt::format("unknown board family \"{}\"", fam.get<std::string>()));
  switch (*family) {
    case ShapeFamily::parallelogram:
    case ShapeFamily::trimmed_parallelogram:
      return Board::build(*family, int_field(j, "m1"), int_field(j, "m2"));
    case ShapeFamily::triangle:
    case ShapeFamily::trimmed_triangle:
    case ShapeFamily::flower:
      return Board::build(*family, int_field(j, "m"));
    case ShapeFamily::explicit_cells:
      return Board::from_cells(cells_from_json(field(j, "cells")),
                               j.contains("name") && j["name"].is_string()
                                   ? j["name"].get<std::string>()
                                   : std::string{});
  }
  malformed("unknown board family");
}

Json to_json(const Configuration& c) {
  Json cells = Json::array();
  for (int i = 0; i < c.board().size(); ++i) {
    const Cell x = c.board().cell(i);
    cells.push_back(Json::array({x.q, x.r, c.label_at_index(i)}));
  }
  return {{"board", to_json(c.board())}, {"cells", std::move(cells)}};
}

Configuration configuration_from_json(const Json& j, const std::optional<Board>& board) {
  if (!j.is_object()) malformed("configuration must be a JSON object");
  const Board b = board ? *board : board_from_json(field(j, "board"));
  const Json& cells = field(j, "cells");
  if (!cells.is_array()) malformed("\"cells\" must be an array");
  std::vector<int> labels(b.size(), -1);
  for (const Json& e : cells) {
    if (!e.is_array() || e.size() != 3 || !e[2].is_number_integer())
      malformed("configuration cells are written [q, r, label]");
    const Cell c = cell_from_json(e);
    const auto idx = b.index_of(c);
    if (!idx) malformed(fmt::format("cell ({},{}) is not on the board", c.q, c.r));
    if (labels[*idx] >= 0) malformed(fmt::format("cell ({},{}) listed twice", c.q, c.r));
    const int label = e[2].get<int>();
    if (label < 0 || label > 255) malformed("labels must lie in 0..255");
    labels[*idx] = label;
  }
  std::vector<std::uint8_t> bytes;
  for (int i = 0; i < b.size(); ++i) {
    if (labels[i] < 0) {
      const Cell c = b.cell(i);
      malformed(fmt::format("cell ({},{}) is missing from the configuration", c.q, c.r));
    }
    bytes.push_back(static_cast<std::uint8_t>(labels[i]));
  }
  try {
    return Configuration(b, std::move(bytes));
  } catch (const Error& e) {
    malformed(e.what());
  }
}

Json to_json(const SlideMove& m) {
  return {{"from", to_json(m.from)}, {"to", to_json(m.to)}, {"witness", to_json(m.witness)}};
}

SlideMove move_from_json(const Json& j, const Configuration& c) {
  const Cell from = cell_from_json(field(j, "from"));
  const Cell to = cell_from_json(field(j, "to"));
  if (auto m = find_slide(c, from, to)) return *m;
  throw Error(ErrorCode::illegal_move,
              fmt::format("no legal slide from ({},{}) to ({},{})", from.q, from.r, to.q, to.r));
}

Json to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max())
    return static_cast<std::uint64_t>(v);
  return v.str();
}

Json to_json(const SolvabilityVerdict& v) {
  Json cert = Json::object();
  const Certificate& c = v.certificate;
  if (!c.normalizing_moves.empty()) {
    Json moves = Json::array();
    for (const auto& m : c.normalizing_moves) moves.push_back(to_json(m));
    cert["normalizing_moves"] = std::move(moves);
  }
  if (c.parity) cert["parity"] = std::string(to_string(*c.parity));
  if (c.corner) cert["corner"] = to_json(*c.corner);
  if (c.path_length) cert["path_length"] = *c.path_length;
  return {{"decision", std::string(to_string(v.decision))},
          {"rule", v.rule},
          {"certificate", std::move(cert)},
          {"explanation", v.explanation}};
}

Json to_json(const ComponentSummary& s, const BigInt& components) {
  return {{"size", s.size},
          {"depth", s.depth},
          {"home_count", s.home_count},
          {"components", to_json(components)}};
}

Json to_json(const PatchDerivation& d) {
  Json bases = Json::array();
  for (const BaseCase& b : d.base_cases)
    bases.push_back({{"board", to_json(b.board)},
                     {"h", b.h},
                     {"claim", std::string(to_string(b.claim))},
                     {"component_size", b.component_size},
                     {"components", to_json(b.components)},
                     {"verified", b.verified}});
  Json steps = Json::array();
  for (const PatchStep& s : d.steps)
    steps.push_back({{"b1", to_json(s.b1)},
                     {"b2", to_json(s.b2)},
                     {"intersection", cells_to_json(s.intersection)},
                     {"k", s.k},
                     {"kind", std::string(to_string(s.kind))}});
  return {{"conclusion",
           {{"board", to_json(d.target)}, {"h", d.h}, {"claim", std::string(to_string(d.claim))}}},
          {"base_cases", std::move(bases)},
          {"steps", std::move(steps)}};
}

PatchDerivation derivation_from_json(const Json& j) {
  auto claim_of = [](const Json& v) {
    if (!v.is_string()) malformed("claim must be a string");
    auto c = parse_claim(v.get<std::string>());
    if (!c) malformed(fmt::format("unknown claim \"{}\"", v.get<std::string>()));
    return *c;
  };
  const Json& conclusion = field(j, "conclusion");
  PatchDerivation d{board_from_json(field(conclusion, "board")), int_field(conclusion, "h"),
                    claim_of(field(conclusion, "claim")), {}, {}};
  for (const Json& b : field(j, "base_cases")) {
    const Json& comps = field(b, "components");
    BigInt count;
    if (comps.is_number_unsigned() || comps.is_number_integer())
      count = comps.get<std::int64_t>();
    else if (comps.is_string())
      count = BigInt(comps.get<std::string>());
    else
      malformed("components must be an integer");
    const Json& size = field(b, "component_size");
    const Json& verified = field(b, "verified");
    if (!size.is_number_integer() || !verified.is_boolean()) malformed("malformed base case");
    d.base_cases.push_back({board_from_json(field(b, "board")), int_field(b, "h"),
                            claim_of(field(b, "claim")), size.get<std::uint64_t>(), count,
                            verified.get<bool>()});
  }
  for (const Json& s : field(j, "steps")) {
    const Json& kind = field(s, "kind");
    std::optional<PatchKind> k;
    if (kind.is_string()) k = parse_patch_kind(kind.get<std::string>());
    if (!k) malformed("step kind must be \"connectivity\" or \"parity\"");
    d.steps.push_back({board_from_json(field(s, "b1")), board_from_json(field(s, "b2")),
                       cells_from_json(field(s, "intersection")), int_field(s, "k"), *k});
  }
  return d;
}

}  // namespace hexslide
