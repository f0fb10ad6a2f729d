#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hyperfact/numeric.hpp"

namespace hyperfact {

using VertexId = std::int32_t;
using ColorId = std::int32_t;

inline constexpr ColorId kUncolored = 0;

// A hyperedge as a sorted vertex multiset. Repetition encodes hinge count:
// {u,u,v} is attached to u by two hinges and to v by one. The total hinge
// count is between 1 and 3; hypergraphs that are amalgamations of 3-uniform
// ones use total 3 everywhere, the shorter forms carry edge "pieces".
class HyperedgeKey {
 public:
  HyperedgeKey() = default;

  static HyperedgeKey of(std::initializer_list<VertexId> verts);
  static HyperedgeKey from_verts(std::span<const VertexId> verts);
  static HyperedgeKey triple(VertexId a, VertexId b, VertexId c);
  static HyperedgeKey pair(VertexId a, VertexId b);
  static HyperedgeKey single(VertexId a);

  std::span<const VertexId> verts() const { return {v_.data(), len_}; }
  int hinge_total() const { return static_cast<int>(len_); }
  int hinge_count(VertexId v) const;
  int size() const;  // number of distinct vertices
  bool contains(VertexId v) const { return hinge_count(v) > 0; }
  bool is_simple_triple() const { return len_ == 3 && size() == 3; }

  // Key with one hinge moved from `from` to `to`.
  HyperedgeKey with_one_replaced(VertexId from, VertexId to) const;
  // Key with every vertex rewritten through the given map (must be total).
  HyperedgeKey mapped(const std::map<VertexId, VertexId>& f) const;

  friend std::strong_ordering operator<=>(const HyperedgeKey& a,
                                          const HyperedgeKey& b) {
    return std::lexicographical_compare_three_way(
        a.v_.begin(), a.v_.begin() + a.len_, b.v_.begin(),
        b.v_.begin() + b.len_);
  }
  friend bool operator==(const HyperedgeKey& a, const HyperedgeKey& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  std::string to_string() const;

 private:
  std::size_t len_ = 0;
  std::array<VertexId, 3> v_{0, 0, 0};
};

class HypergraphBuilder;

// Vertex set plus a multiplicity table of colored hyperedges. Immutable after
// construction; use HypergraphBuilder to assemble one.
class Hypergraph {
 public:
  using TableKey = std::pair<HyperedgeKey, ColorId>;
  using Table = std::map<TableKey, Count>;

  Hypergraph() = default;

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const Table& table() const { return table_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  bool has_vertex(VertexId v) const;

  // Number of hinges incident with v, optionally restricted to one color.
  Count degree(VertexId v) const;
  Count degree(VertexId v, ColorId j) const;

  // Multiplicity of a key summed over colors.
  Count multiplicity(const HyperedgeKey& key) const;
  // Stored count for one (key, color) entry; 0 when absent.
  Count count(const HyperedgeKey& key, ColorId j) const;

  Count total_edges() const;          // sum of all counts
  Count edge_count(ColorId j) const;  // sum of counts of one color
  Count total_hinges() const;
  std::vector<ColorId> colors_used() const { return colors_; }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.vertices_ == b.vertices_ && a.table_ == b.table_;
  }

 private:
  friend class HypergraphBuilder;
  Hypergraph(std::vector<VertexId> vertices, Table table);

  std::vector<VertexId> vertices_;
  Table table_;
  std::map<std::pair<VertexId, ColorId>, Count> degree_;
  std::map<VertexId, Count> degree_total_;
  std::vector<ColorId> colors_;
};

// Single-owner accumulator; counts aggregate per (key, color).
class HypergraphBuilder {
 public:
  HypergraphBuilder& add_vertex(VertexId v);
  HypergraphBuilder& add_vertices(int n);  // ids 0..n-1
  HypergraphBuilder& add_vertex_set(std::span<const VertexId> vs);
  HypergraphBuilder& add_edge(const HyperedgeKey& key, ColorId color,
                              Count count = 1);
  Hypergraph build() &&;

 private:
  std::vector<VertexId> vertices_;
  Hypergraph::Table table_;
};

// Surjection from detached vertices onto amalgamated ones.
struct AmalgamationMap {
  std::map<VertexId, VertexId> psi;

  static AmalgamationMap identity_on(const Hypergraph& g);
  bool total_on(const Hypergraph& g) const;
};

// g: vertex -> positive fiber size. Induced by an AmalgamationMap via
// g(w) = |psi^{-1}(w)|.
struct NumberFunction {
  std::map<VertexId, int> g;

  int at(VertexId v) const;
  bool total_on(const Hypergraph& g_on) const;

  static NumberFunction induced_by(const AmalgamationMap& psi);
  static NumberFunction ones_on(const Hypergraph& g_on);
};

// Number of distinct vertex triples a pattern stands for after detachment:
// C(g(x),3) for x^3, C(g(x),2)g(y) for x^2 y, g(x)g(y)g(z) otherwise.
Count g_tilde(const NumberFunction& g, const HyperedgeKey& pattern);

// -- construction operations --------------------------------------------

// K_n^3, uncolored: every 3-subset of 0..n-1 exactly once. Requires n >= 3.
Hypergraph complete_3_uniform(int n);
// Every piece_size-subset of 0..n-1 once (piece_size in 1..3), uncolored.
Hypergraph complete_uniform(int n, int piece_size);
// Every count multiplied by lambda (lambda >= 1).
Hypergraph lambda_multiple(const Hypergraph& g, Count lambda);
// Entrywise table sum; all parts must share one vertex set.
Hypergraph union_of(const std::vector<Hypergraph>& parts);
// Sub-hypergraph spanned by one color class (same vertex set).
Hypergraph color_class(const Hypergraph& g, ColorId j);
// True iff color class j is spanning and r-regular.
bool is_r_factor(const Hypergraph& g, ColorId j, Count r);
// Image of g under psi: vertices merge, hinge counts at merged vertices add,
// colors are preserved. psi must be total on the vertex set.
Hypergraph amalgamate(const Hypergraph& g, const AmalgamationMap& psi);

}  // namespace hyperfact
