#include "pretrans/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pretrans {

using nlohmann::json;

json frame_to_json(const Frame& f, const WorldNames& names) {
  json edges = json::array();
  for (const auto& [u, v] : f.rel().edges()) edges.push_back({u, v});
  json j{{"worlds", f.size()}, {"edges", edges}};
  if (!names.empty()) {
    json n = json::object();
    for (const auto& [w, s] : names) n[std::to_string(w)] = s;
    j["names"] = n;
  }
  return j;
}

Frame frame_from_json(const json& j) {
  const auto n = j.at("worlds").get<std::size_t>();
  if (n == 0) throw std::invalid_argument("frame JSON: \"worlds\" must be >= 1");
  std::vector<std::pair<World, World>> edges;
  for (const auto& e : j.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("frame JSON: each edge must be [u, v]");
    edges.emplace_back(e[0].get<World>(), e[1].get<World>());
  }
  return Frame::from_edges(n, edges);
}

WorldNames names_from_json(const json& j) {
  WorldNames out;
  if (!j.contains("names")) return out;
  const auto n = j.at("worlds").get<std::size_t>();
  for (const auto& [key, value] : j.at("names").items()) {
    const World w = std::stoul(key);
    if (w >= n) throw std::invalid_argument("frame JSON: name for world " + key + " out of range");
    out[w] = value.get<std::string>();
  }
  return out;
}

json model_to_json(const Model& m, const WorldNames& names) {
  json j = frame_to_json(m.frame, names);
  json v = json::object();
  for (const auto& [p, s] : m.valuation) v[p] = s.to_vector();
  j["valuation"] = v;
  return j;
}

Model model_from_json(const json& j) {
  if (j.contains("model") && !j.contains("worlds")) return model_from_json(j.at("model"));
  Model m(frame_from_json(j));
  const std::size_t n = m.frame.size();
  if (j.contains("valuation")) {
    for (const auto& [p, worlds] : j.at("valuation").items()) {
      WorldSet s(n);
      for (const auto& w : worlds) {
        const auto id = w.get<World>();
        if (id >= n) throw std::invalid_argument("model JSON: world " + std::to_string(id) + " in " + p + " out of range");
        s.set(id);
      }
      m.valuation.emplace(p, std::move(s));
    }
  }
  return m;
}

std::string to_dot(const Frame& f, const DotOptions& opts) {
  std::ostringstream out;
  const Skeleton sk = skeleton(f);
  auto label = [&](World w) {
    std::string s;
    if (const auto it = opts.names.find(w); it != opts.names.end())
      s = it->second;
    else
      s = std::to_string(w);
    if (opts.model) {
      std::string vars;
      for (const auto& [p, set] : opts.model->valuation)
        if (set.test(w)) vars += (vars.empty() ? "" : ",") + p;
      if (!vars.empty()) s += "\\n" + vars;
    }
    return s;
  };
  out << "digraph frame {\n  node [shape=circle];\n";
  for (std::size_t c = 0; c < sk.clusters.size(); ++c) {
    out << "  subgraph cluster_" << c << " {\n    style=rounded; shape=box;\n";
    sk.clusters[c].for_each([&](World w) { out << "    w" << w << " [label=\"" << label(w) << "\"];\n"; });
    out << "  }\n";
  }
  for (const auto& [u, v] : f.rel().edges()) out << "  w" << u << " -> w" << v << ";\n";
  for (const auto& [u, v] : opts.links) out << "  w" << u << " -> w" << v << " [style=dashed, color=blue];\n";
  out << "}\n";
  return out.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace pretrans
