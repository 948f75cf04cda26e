#pragma once

// JSON sidecars ("format": 1) and CSV exports.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "equi/bipartite.hpp"
#include "equi/constructions.hpp"
#include "equi/halving.hpp"

namespace equi {

inline constexpr int kSidecarFormat = 1;

nlohmann::json to_json(const BoxPairing& pairing);
BoxPairing pairing_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BlockStructure& blocks);
BlockStructure blocks_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PathCycleDecomposition& decomp);
nlohmann::json to_json(const CapResult& cap);
nlohmann::json to_json(const HalvingTrace& trace);

/// "row_index,load" header plus one line per row.
std::string row_loads_csv(const RowLoads& loads);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace equi
