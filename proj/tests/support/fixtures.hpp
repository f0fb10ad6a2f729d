#pragma once

#include <cstdint>

#include "hyperfact/hypergraph.hpp"
#include "hyperfact/rng.hpp"

namespace hyperfact::testing {

// K_n^3 with each triple colored uniformly at random from 1..num_colors.
inline Hypergraph random_colored_complete(int n, int num_colors,
                                          std::uint64_t seed) {
  SplitMix64 rng(mix_seed(seed, 0xC0105));
  HypergraphBuilder b;
  b.add_vertices(n);
  for (VertexId x = 0; x < n; ++x)
    for (VertexId y = x + 1; y < n; ++y)
      for (VertexId z = y + 1; z < n; ++z)
        b.add_edge(HyperedgeKey::triple(x, y, z),
                   static_cast<ColorId>(rng.below(
                       static_cast<std::uint64_t>(num_colors)) + 1));
  return std::move(b).build();
}

// Surjection 0..n-1 onto 0..w-1 (w <= n).
inline AmalgamationMap random_surjection(int n, int w, std::uint64_t seed) {
  SplitMix64 rng(mix_seed(seed, 0x5E7));
  AmalgamationMap psi;
  // hit every target once, then scatter the rest
  std::vector<VertexId> sources(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sources[static_cast<std::size_t>(i)] = i;
  shuffle_in_place(sources, rng);
  for (int i = 0; i < w; ++i) psi.psi[sources[static_cast<std::size_t>(i)]] = i;
  for (int i = w; i < n; ++i)
    psi.psi[sources[static_cast<std::size_t>(i)]] =
        static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(w)));
  return psi;
}

// Each triple its own color, in lexicographic order.
inline Hypergraph rainbow_complete(int m) {
  HypergraphBuilder b;
  b.add_vertices(m);
  ColorId color = 1;
  for (VertexId x = 0; x < m; ++x)
    for (VertexId y = x + 1; y < m; ++y)
      for (VertexId z = y + 1; z < m; ++z)
        b.add_edge(HyperedgeKey::triple(x, y, z), color++);
  return std::move(b).build();
}

inline Hypergraph mono_complete(int m, ColorId color = 1) {
  HypergraphBuilder b;
  b.add_vertices(m);
  for (VertexId x = 0; x < m; ++x)
    for (VertexId y = x + 1; y < m; ++y)
      for (VertexId z = y + 1; z < m; ++z)
        b.add_edge(HyperedgeKey::triple(x, y, z), color);
  return std::move(b).build();
}

// Five-class piece system on three vertices for rate 2 and host order 6:
// every pair three times, every singleton three times, per-class degree 2.
inline Hypergraph hand_pieces_valid() {
  HypergraphBuilder b;
  b.add_vertices(3);
  auto pair = [](VertexId a, VertexId c) { return HyperedgeKey::pair(a, c); };
  auto single = [](VertexId a) { return HyperedgeKey::single(a); };
  b.add_edge(HyperedgeKey::triple(0, 1, 2), 1);
  b.add_edge(pair(0, 1), 1);
  b.add_edge(single(2), 1);
  b.add_edge(pair(0, 1), 2);
  b.add_edge(pair(0, 2), 2);
  b.add_edge(single(1), 2);
  b.add_edge(single(2), 2);
  b.add_edge(pair(0, 1), 3);
  b.add_edge(pair(1, 2), 3);
  b.add_edge(single(0), 3);
  b.add_edge(single(2), 3);
  b.add_edge(pair(0, 2), 4);
  b.add_edge(pair(1, 2), 4);
  b.add_edge(single(0), 4);
  b.add_edge(single(1), 4);
  b.add_edge(pair(0, 2), 5);
  b.add_edge(pair(1, 2), 5);
  b.add_edge(single(0), 5);
  b.add_edge(single(1), 5);
  return std::move(b).build();
}

// Two-class piece system on three vertices for rate 3 and host order 5:
// pairs twice each, singletons once each, and no room for edges living
// entirely among the two added vertices.
inline Hypergraph hand_pieces_two_new() {
  HypergraphBuilder b;
  b.add_vertices(3);
  b.add_edge(HyperedgeKey::triple(0, 1, 2), 1);
  b.add_edge(HyperedgeKey::pair(0, 1), 1);
  b.add_edge(HyperedgeKey::pair(0, 2), 1);
  b.add_edge(HyperedgeKey::single(1), 1);
  b.add_edge(HyperedgeKey::single(2), 1);
  b.add_edge(HyperedgeKey::pair(0, 1), 2);
  b.add_edge(HyperedgeKey::pair(0, 2), 2);
  b.add_edge(HyperedgeKey::pair(1, 2), 2, 2);
  b.add_edge(HyperedgeKey::single(0), 2);
  return std::move(b).build();
}

// Same census but the last class sits entirely on singletons, leaving it
// with no pair or triple mass.
inline Hypergraph hand_pieces_invalid() {
  HypergraphBuilder b;
  b.add_vertices(3);
  for (ColorId j = 1; j <= 3; ++j) {
    b.add_edge(HyperedgeKey::pair(0, 1), j);
    b.add_edge(HyperedgeKey::pair(0, 2), j);
    b.add_edge(HyperedgeKey::pair(1, 2), j);
  }
  b.add_edge(HyperedgeKey::triple(0, 1, 2), 4);
  b.add_edge(HyperedgeKey::single(0), 4);
  b.add_edge(HyperedgeKey::single(1), 4);
  b.add_edge(HyperedgeKey::single(2), 4);
  b.add_edge(HyperedgeKey::single(0), 5, 2);
  b.add_edge(HyperedgeKey::single(1), 5, 2);
  b.add_edge(HyperedgeKey::single(2), 5, 2);
  return std::move(b).build();
}

}  // namespace hyperfact::testing
