#include "equi/sidecars.hpp"

namespace equi {

using nlohmann::json;

namespace {

void require_format(const json& j) {
  if (!j.is_object() || j.value("format", 0) != kSidecarFormat) {
    throw ParseError(1, "unsupported sidecar format");
  }
}

}  // namespace

json to_json(const BoxPairing& p) {
  json pairs = json::array();
  for (const auto& bp : p.pairs) {
    pairs.push_back({{"boxes", {{bp.row1, bp.col1}, {bp.row2, bp.col2}}}, {"colour", bp.colour}});
  }
  json fill = json::array();
  for (const auto& [cell, colour] : p.leftover_fill) fill.push_back({cell.row, cell.col, colour});
  return {{"format", kSidecarFormat},
          {"kind", "box_pairing"},
          {"n", p.n},
          {"m", p.m},
          {"r", p.r},
          {"a", p.a},
          {"b", p.b},
          {"pairs", std::move(pairs)},
          {"leftover_fill", std::move(fill)}};
}

BoxPairing pairing_from_json(const json& j) {
  require_format(j);
  try {
    BoxPairing p;
    p.n = j.at("n").get<int>();
    p.m = j.at("m").get<int>();
    p.r = j.at("r").get<int>();
    p.a = j.at("a").get<int>();
    p.b = j.at("b").get<int>();
    for (const auto& e : j.at("pairs")) {
      const auto& boxes = e.at("boxes");
      p.pairs.push_back({boxes.at(0).at(0).get<int>(), boxes.at(0).at(1).get<int>(),
                         boxes.at(1).at(0).get<int>(), boxes.at(1).at(1).get<int>(),
                         e.at("colour").get<int>()});
    }
    for (const auto& e : j.at("leftover_fill")) {
      p.leftover_fill.push_back({{e.at(0).get<int>(), e.at(1).get<int>()}, e.at(2).get<int>()});
    }
    return p;
  } catch (const json::exception& e) {
    throw ParseError(1, std::string("bad pairing sidecar: ") + e.what());
  }
}

json to_json(const BlockStructure& bs) {
  json blocks = json::array();
  for (const auto& b : bs.blocks) blocks.push_back({{"col", b.col}, {"symbol", b.symbol}, {"rows", b.rows}});
  return {{"format", kSidecarFormat}, {"kind", "blocks"}, {"n", bs.n}, {"m", bs.m}, {"blocks", std::move(blocks)}};
}

BlockStructure blocks_from_json(const json& j) {
  require_format(j);
  try {
    BlockStructure bs;
    bs.n = j.at("n").get<int>();
    bs.m = j.at("m").get<int>();
    for (const auto& e : j.at("blocks")) {
      bs.blocks.push_back({e.at("col").get<int>(), e.at("symbol").get<int>(),
                           e.at("rows").get<std::vector<int>>()});
    }
    return bs;
  } catch (const json::exception& e) {
    throw ParseError(1, std::string("bad blocks sidecar: ") + e.what());
  }
}

json to_json(const PathCycleDecomposition& decomp) {
  json comps = json::array();
  for (const auto& c : decomp.components) {
    std::string sides;
    for (Side s : c.sides) sides += s == Side::A ? 'a' : 'b';
    comps.push_back({{"kind", c.cycle ? "cycle" : "path"}, {"labels", c.labels}, {"sides", sides}});
  }
  return comps;
}

json to_json(const CapResult& cap) {
  return {{"deleted", cap.deleted}, {"components", to_json(cap.components)}};
}

json to_json(const HalvingTrace& trace) {
  json levels = json::array();
  for (const auto& lt : trace.levels) {
    json pairs = json::array();
    for (const auto& pt : lt.pairs) {
      json flips = json::array();
      for (auto f : pt.flips) flips.push_back(static_cast<int>(f));
      pairs.push_back({{"input_a", pt.input_a},
                       {"input_b", pt.input_b},
                       {"cap", to_json(pt.cap)},
                       {"flips", std::move(flips)},
                       {"output", pt.output}});
    }
    levels.push_back({{"level", lt.level}, {"pairs", std::move(pairs)}});
  }
  return {{"format", kSidecarFormat},
          {"kind", "halving_trace"},
          {"rng_seed", trace.rng_seed},
          {"cap", trace.cap},
          {"inputs", trace.inputs},
          {"levels", std::move(levels)}};
}

std::string row_loads_csv(const RowLoads& loads) {
  std::string out = "row_index,load\n";
  for (std::size_t i = 0; i < loads.loads.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(loads.loads[i]) + "\n";
  }
  return out;
}

json read_json(const std::filesystem::path& path) {
  const auto text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, std::string("invalid JSON: ") + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(1) + "\n"); }

}  // namespace equi
