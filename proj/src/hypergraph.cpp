#include "hyperfact/hypergraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hyperfact {

HyperedgeKey HyperedgeKey::of(std::initializer_list<VertexId> verts) {
  std::vector<VertexId> v(verts);
  return from_verts(v);
}

HyperedgeKey HyperedgeKey::from_verts(std::span<const VertexId> verts) {
  if (verts.empty() || verts.size() > 3)
    throw std::invalid_argument("hyperedge key needs 1 to 3 hinges, got " +
                                std::to_string(verts.size()));
  HyperedgeKey key;
  key.len_ = verts.size();
  std::copy(verts.begin(), verts.end(), key.v_.begin());
  std::sort(key.v_.begin(), key.v_.begin() + key.len_);
  if (key.v_[0] < 0)
    throw std::invalid_argument("hyperedge key with negative vertex id");
  return key;
}

HyperedgeKey HyperedgeKey::triple(VertexId a, VertexId b, VertexId c) {
  return of({a, b, c});
}
HyperedgeKey HyperedgeKey::pair(VertexId a, VertexId b) { return of({a, b}); }
HyperedgeKey HyperedgeKey::single(VertexId a) { return of({a}); }

int HyperedgeKey::hinge_count(VertexId v) const {
  int c = 0;
  for (std::size_t i = 0; i < len_; ++i)
    if (v_[i] == v) ++c;
  return c;
}

int HyperedgeKey::size() const {
  int distinct = 0;
  for (std::size_t i = 0; i < len_; ++i)
    if (i == 0 || v_[i] != v_[i - 1]) ++distinct;
  return distinct;
}

HyperedgeKey HyperedgeKey::with_one_replaced(VertexId from, VertexId to) const {
  std::vector<VertexId> v(verts().begin(), verts().end());
  auto it = std::find(v.begin(), v.end(), from);
  if (it == v.end())
    throw std::invalid_argument("with_one_replaced: vertex not in key");
  *it = to;
  return from_verts(v);
}

HyperedgeKey HyperedgeKey::mapped(const std::map<VertexId, VertexId>& f) const {
  std::vector<VertexId> v;
  v.reserve(len_);
  for (VertexId x : verts()) {
    auto it = f.find(x);
    if (it == f.end())
      throw std::invalid_argument("mapped: vertex " + std::to_string(x) +
                                  " missing from map");
    v.push_back(it->second);
  }
  return from_verts(v);
}

std::string HyperedgeKey::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < len_; ++i) {
    if (i) out << ',';
    out << v_[i];
  }
  out << '}';
  return out.str();
}

Hypergraph::Hypergraph(std::vector<VertexId> vertices, Table table)
    : vertices_(std::move(vertices)), table_(std::move(table)) {
  if (!std::is_sorted(vertices_.begin(), vertices_.end()) ||
      std::adjacent_find(vertices_.begin(), vertices_.end()) !=
          vertices_.end())
    throw std::invalid_argument("vertex set must be sorted and duplicate-free");
  std::set<ColorId> colors;
  for (const auto& [kc, cnt] : table_) {
    const auto& [key, color] = kc;
    if (cnt <= 0) throw std::invalid_argument("zero-count table entry");
    if (color < 0) throw std::invalid_argument("negative color id");
    colors.insert(color);
    VertexId prev = -1;
    for (VertexId v : key.verts()) {
      if (v == prev) continue;
      prev = v;
      if (!has_vertex(v))
        throw std::invalid_argument("edge " + key.to_string() +
                                    " uses unknown vertex " +
                                    std::to_string(v));
      Count hinges = static_cast<Count>(key.hinge_count(v)) * cnt;
      degree_[{v, color}] += hinges;
      degree_total_[v] += hinges;
    }
  }
  colors_.assign(colors.begin(), colors.end());
}

bool Hypergraph::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

Count Hypergraph::degree(VertexId v) const {
  if (!has_vertex(v))
    throw std::out_of_range("degree: unknown vertex " + std::to_string(v));
  auto it = degree_total_.find(v);
  return it == degree_total_.end() ? 0 : it->second;
}

Count Hypergraph::degree(VertexId v, ColorId j) const {
  if (!has_vertex(v))
    throw std::out_of_range("degree: unknown vertex " + std::to_string(v));
  auto it = degree_.find({v, j});
  return it == degree_.end() ? 0 : it->second;
}

Count Hypergraph::multiplicity(const HyperedgeKey& key) const {
  Count total = 0;
  for (auto it = table_.lower_bound({key, 0});
       it != table_.end() && it->first.first == key; ++it)
    total += it->second;
  return total;
}

Count Hypergraph::count(const HyperedgeKey& key, ColorId j) const {
  auto it = table_.find({key, j});
  return it == table_.end() ? 0 : it->second;
}

Count Hypergraph::total_edges() const {
  Count total = 0;
  for (const auto& [kc, cnt] : table_) total += cnt;
  return total;
}

Count Hypergraph::edge_count(ColorId j) const {
  Count total = 0;
  for (const auto& [kc, cnt] : table_)
    if (kc.second == j) total += cnt;
  return total;
}

Count Hypergraph::total_hinges() const {
  Count total = 0;
  for (const auto& [kc, cnt] : table_)
    total += static_cast<Count>(kc.first.hinge_total()) * cnt;
  return total;
}

HypergraphBuilder& HypergraphBuilder::add_vertex(VertexId v) {
  vertices_.push_back(v);
  return *this;
}

HypergraphBuilder& HypergraphBuilder::add_vertices(int n) {
  for (VertexId v = 0; v < n; ++v) vertices_.push_back(v);
  return *this;
}

HypergraphBuilder& HypergraphBuilder::add_vertex_set(
    std::span<const VertexId> vs) {
  vertices_.insert(vertices_.end(), vs.begin(), vs.end());
  return *this;
}

HypergraphBuilder& HypergraphBuilder::add_edge(const HyperedgeKey& key,
                                               ColorId color, Count count) {
  if (count <= 0) throw std::invalid_argument("add_edge: count must be >= 1");
  table_[{key, color}] += count;
  return *this;
}

Hypergraph HypergraphBuilder::build() && {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()),
                  vertices_.end());
  return Hypergraph(std::move(vertices_), std::move(table_));
}

AmalgamationMap AmalgamationMap::identity_on(const Hypergraph& g) {
  AmalgamationMap m;
  for (VertexId v : g.vertices()) m.psi[v] = v;
  return m;
}

bool AmalgamationMap::total_on(const Hypergraph& g) const {
  for (VertexId v : g.vertices())
    if (!psi.contains(v)) return false;
  return true;
}

int NumberFunction::at(VertexId v) const {
  auto it = g.find(v);
  if (it == g.end())
    throw std::out_of_range("number function undefined at vertex " +
                            std::to_string(v));
  return it->second;
}

bool NumberFunction::total_on(const Hypergraph& g_on) const {
  for (VertexId v : g_on.vertices())
    if (!g.contains(v)) return false;
  return true;
}

NumberFunction NumberFunction::induced_by(const AmalgamationMap& psi) {
  NumberFunction g;
  for (const auto& [from, to] : psi.psi) {
    (void)from;
    g.g[to] += 1;
  }
  return g;
}

NumberFunction NumberFunction::ones_on(const Hypergraph& g_on) {
  NumberFunction g;
  for (VertexId v : g_on.vertices()) g.g[v] = 1;
  return g;
}

Count g_tilde(const NumberFunction& g, const HyperedgeKey& pattern) {
  if (pattern.hinge_total() != 3)
    throw std::invalid_argument("g_tilde expects a 3-hinge pattern");
  auto vs = pattern.verts();
  Count result = 1;
  VertexId prev = -1;
  for (VertexId x : vs) {
    if (x == prev) continue;
    prev = x;
    result *= binom(g.at(x), pattern.hinge_count(x));
  }
  return result;
}

Hypergraph complete_3_uniform(int n) {
  if (n < 3)
    throw std::invalid_argument("complete_3_uniform: order must be >= 3");
  return complete_uniform(n, 3);
}

Hypergraph complete_uniform(int n, int piece_size) {
  if (piece_size < 1 || piece_size > 3)
    throw std::invalid_argument("complete_uniform: piece size must be 1..3");
  if (n < piece_size)
    throw std::invalid_argument("complete_uniform: order below piece size");
  HypergraphBuilder b;
  b.add_vertices(n);
  switch (piece_size) {
    case 1:
      for (VertexId a = 0; a < n; ++a) b.add_edge(HyperedgeKey::single(a), 0);
      break;
    case 2:
      for (VertexId a = 0; a < n; ++a)
        for (VertexId bb = a + 1; bb < n; ++bb)
          b.add_edge(HyperedgeKey::pair(a, bb), 0);
      break;
    default:
      for (VertexId a = 0; a < n; ++a)
        for (VertexId bb = a + 1; bb < n; ++bb)
          for (VertexId c = bb + 1; c < n; ++c)
            b.add_edge(HyperedgeKey::triple(a, bb, c), 0);
  }
  return std::move(b).build();
}

Hypergraph lambda_multiple(const Hypergraph& g, Count lambda) {
  if (lambda < 1)
    throw std::invalid_argument("lambda_multiple: lambda must be >= 1");
  Hypergraph::Table table = g.table();
  for (auto& [kc, cnt] : table) cnt *= lambda;
  HypergraphBuilder b;
  b.add_vertex_set(g.vertices());
  for (const auto& [kc, cnt] : table) b.add_edge(kc.first, kc.second, cnt);
  return std::move(b).build();
}

Hypergraph union_of(const std::vector<Hypergraph>& parts) {
  if (parts.empty()) throw std::invalid_argument("union_of: no parts");
  HypergraphBuilder b;
  b.add_vertex_set(parts.front().vertices());
  for (const Hypergraph& part : parts) {
    if (part.vertices() != parts.front().vertices())
      throw std::invalid_argument("union_of: vertex sets differ");
    for (const auto& [kc, cnt] : part.table())
      b.add_edge(kc.first, kc.second, cnt);
  }
  return std::move(b).build();
}

Hypergraph color_class(const Hypergraph& g, ColorId j) {
  HypergraphBuilder b;
  b.add_vertex_set(g.vertices());
  for (const auto& [kc, cnt] : g.table())
    if (kc.second == j) b.add_edge(kc.first, kc.second, cnt);
  return std::move(b).build();
}

bool is_r_factor(const Hypergraph& g, ColorId j, Count r) {
  for (VertexId v : g.vertices())
    if (g.degree(v, j) != r) return false;
  return true;
}

Hypergraph amalgamate(const Hypergraph& g, const AmalgamationMap& psi) {
  if (!psi.total_on(g))
    throw std::invalid_argument("amalgamate: psi is not total on the vertices");
  HypergraphBuilder b;
  for (VertexId v : g.vertices()) b.add_vertex(psi.psi.at(v));
  for (const auto& [kc, cnt] : g.table())
    b.add_edge(kc.first.mapped(psi.psi), kc.second, cnt);
  return std::move(b).build();
}

}  // namespace hyperfact
