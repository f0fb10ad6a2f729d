#include "hyperfact/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hyperfact/detachment.hpp"

namespace hyperfact {

namespace {

VertexId vertex_from_json(const nlohmann::json& j) {
  if (!j.is_number_integer())
    throw std::runtime_error("vertex id must be an integer");
  auto v = j.get<std::int64_t>();
  if (v < 0 || v > std::numeric_limits<VertexId>::max())
    throw std::runtime_error("vertex id out of range: " + j.dump());
  return static_cast<VertexId>(v);
}

}  // namespace

nlohmann::json hypergraph_to_json(const Hypergraph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertices();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [kc, cnt] : g.table()) {
    nlohmann::json e;
    e["verts"] = std::vector<VertexId>(kc.first.verts().begin(),
                                       kc.first.verts().end());
    e["color"] = kc.second;
    e["count"] = cnt;
    edges.push_back(std::move(e));
  }
  j["edges"] = std::move(edges);
  return j;
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw std::runtime_error(
        "hypergraph json needs \"vertices\" and \"edges\"");
  HypergraphBuilder b;
  for (const auto& v : j.at("vertices")) b.add_vertex(vertex_from_json(v));
  for (const auto& e : j.at("edges")) {
    if (!e.is_object() || !e.contains("verts") || !e.contains("color"))
      throw std::runtime_error("edge entry needs \"verts\" and \"color\"");
    std::vector<VertexId> verts;
    for (const auto& v : e.at("verts")) verts.push_back(vertex_from_json(v));
    auto color = e.at("color").get<std::int64_t>();
    if (color < 0) throw std::runtime_error("edge color must be >= 0");
    Count count = e.value("count", Count{1});
    if (count < 1) throw std::runtime_error("edge count must be >= 1");
    b.add_edge(HyperedgeKey::from_verts(verts), static_cast<ColorId>(color),
               count);
  }
  return std::move(b).build();
}

nlohmann::json detachment_to_json(const DetachmentResult& result) {
  nlohmann::json j = hypergraph_to_json(result.detached);
  nlohmann::json psi = nlohmann::json::object();
  for (const auto& [from, to] : result.psi.psi)
    psi[std::to_string(from)] = to;
  j["psi"] = std::move(psi);
  j["seed"] = result.seed;
  return j;
}

DetachmentResult detachment_from_json(const nlohmann::json& j) {
  DetachmentResult result;
  result.detached = hypergraph_from_json(j);
  if (!j.contains("psi") || !j.at("psi").is_object())
    throw std::runtime_error("detachment json needs a \"psi\" object");
  for (const auto& [from, to] : j.at("psi").items())
    result.psi.psi[static_cast<VertexId>(std::stol(from))] =
        vertex_from_json(to);
  result.seed = j.value("seed", std::uint64_t{0});
  return result;
}

std::string dump_canonical(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace hyperfact
