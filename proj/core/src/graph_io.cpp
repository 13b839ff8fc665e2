#include <sstream>

#include "btlab/error.hpp"
#include "btlab/graph.hpp"

namespace btlab {

nlohmann::json to_json(const LabeledGraph& g) {
  nlohmann::json doc;
  doc["meta"] = g.meta;
  auto vertices = nlohmann::json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    nlohmann::json entry;
    entry["id"] = v;
    entry["module"] = g.payload.empty() ? std::string() : g.payload[v];
    entry["tau"] = g.tau ? nlohmann::json((*g.tau)[v]) : nlohmann::json(nullptr);
    entry["dist"] = g.dist ? nlohmann::json((*g.dist)[v]) : nlohmann::json(nullptr);
    vertices.push_back(std::move(entry));
  }
  doc["vertices"] = std::move(vertices);
  auto edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  return doc;
}

LabeledGraph graph_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
      throw InvalidInput("graph document needs 'vertices' and 'edges'");
    const auto& vs = doc.at("vertices");
    if (!vs.is_array()) throw InvalidInput("'vertices' must be an array");
    LabeledGraph g(vs.size());
    if (doc.contains("meta")) g.meta = doc.at("meta");
    std::vector<int> tau, dist;
    bool any_tau = false, all_tau = true, any_dist = false, all_dist = true, any_module = false;
    std::vector<std::string> payload;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto& entry = vs[i];
      if (entry.contains("id") && entry.at("id").get<std::size_t>() != i)
        throw InvalidInput("vertex ids must be 0..n-1 in order");
      const bool has_tau = entry.contains("tau") && !entry.at("tau").is_null();
      any_tau |= has_tau;
      all_tau &= has_tau;
      tau.push_back(has_tau ? entry.at("tau").get<int>() : 0);
      const bool has_dist = entry.contains("dist") && !entry.at("dist").is_null();
      any_dist |= has_dist;
      all_dist &= has_dist;
      dist.push_back(has_dist ? entry.at("dist").get<int>() : 0);
      std::string module = entry.contains("module") ? entry.at("module").get<std::string>() : std::string();
      any_module |= !module.empty();
      payload.push_back(std::move(module));
    }
    if (any_tau && !all_tau) throw InvalidInput("tau must be given for all vertices or none");
    if (any_dist && !all_dist) throw InvalidInput("dist must be given for all vertices or none");
    if (any_tau) g.tau = std::move(tau);
    if (any_dist) g.dist = std::move(dist);
    if (any_module) g.payload = std::move(payload);
    const auto& es = doc.at("edges");
    if (!es.is_array()) throw InvalidInput("'edges' must be an array");
    for (const auto& e : es) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("each edge must be a pair [u, v]");
      g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
  } catch (const nlohmann::json::exception& err) {
    throw InvalidInput(std::string("malformed graph document: ") + err.what());
  }
}

LabeledGraph parse_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw InvalidInput(std::string("malformed graph document: ") + err.what());
  }
  return graph_from_json(doc);
}

std::string to_dot(const LabeledGraph& g) {
  static const char* palette[] = {"red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta"};
  std::ostringstream os;
  os << "graph ball {\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    os << "  " << v;
    if (g.tau) {
      const int t = (*g.tau)[v];
      os << " [label=\"" << v << "\\ntau=" << t << "\", color=" << palette[static_cast<std::size_t>(t) % 8] << "]";
    }
    os << ";\n";
  }
  for (const auto& [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_csv(const LabeledGraph& g) {
  std::ostringstream os;
  os << "u,v\n";
  for (const auto& [u, v] : g.edges()) os << u << "," << v << "\n";
  return os.str();
}

}  // namespace btlab
