#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pretrans/kripke.hpp"

namespace pretrans {

/// Optional display names of worlds; never used by the algorithms.
using WorldNames = std::map<World, std::string>;

/// {"worlds": N, "edges": [[u, v], ...], "names": {"0": "label"}?}
nlohmann::json frame_to_json(const Frame& f, const WorldNames& names = {});
Frame frame_from_json(const nlohmann::json& j);
WorldNames names_from_json(const nlohmann::json& j);

/// Frame fields plus "valuation": {"p0": [worlds...]}.
nlohmann::json model_to_json(const Model& m, const WorldNames& names = {});
/// Also accepts an envelope carrying the model under "model".
Model model_from_json(const nlohmann::json& j);

struct DotOptions {
  WorldNames names;
  /// Drawn dashed on top of the relation.
  std::vector<std::pair<World, World>> links;
  /// Worlds listed with the variables true there.
  const Model* model = nullptr;
};

/// Graphviz digraph with one box per cluster.
std::string to_dot(const Frame& f, const DotOptions& opts = {});

nlohmann::json read_json_file(const std::string& path);

}  // namespace pretrans
