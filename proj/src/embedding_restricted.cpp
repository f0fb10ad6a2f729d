#include "hyperfact/embedding_restricted.hpp"

#include <algorithm>
#include <sstream>

#include "hyperfact/rng.hpp"

namespace hyperfact {

PiecesInstance make_pieces_instance(Hypergraph pieces, int n, Count r) {
  const int m = pieces.num_vertices();
  if (m < 3)
    throw EmbedError(EmbedError::Kind::bad_instance,
                     "piece system needs at least three vertices");
  for (int i = 0; i < m; ++i)
    if (pieces.vertices()[static_cast<std::size_t>(i)] != i)
      throw EmbedError(EmbedError::Kind::bad_instance,
                       "vertex ids must be dense 0..m-1");
  if (n < m)
    throw EmbedError(EmbedError::Kind::bad_instance,
                     "host order below instance order");
  if (n > 2000000)
    throw EmbedError(EmbedError::Kind::bad_instance,
                     "host order out of supported range");
  if (r < 1)
    throw EmbedError(EmbedError::Kind::bad_instance, "rate must be positive");

  for (const auto& [kc, cnt] : pieces.table()) {
    (void)cnt;
    const HyperedgeKey& key = kc.first;
    if (key.size() != key.hinge_total())
      throw EmbedError(EmbedError::Kind::bad_instance,
                       "piece " + key.to_string() +
                           " attaches to a vertex more than once");
    if (kc.second == kUncolored)
      throw EmbedError(EmbedError::Kind::bad_instance,
                       "piece " + key.to_string() + " is uncolored");
  }

  const Count pair_copies = n - m;
  const Count single_copies = binom(n - m, 2);
  for (VertexId a = 0; a < m; ++a) {
    if (pieces.multiplicity(HyperedgeKey::single(a)) != single_copies)
      throw EmbedError(EmbedError::Kind::bad_instance,
                       "singleton {" + std::to_string(a) + "} must appear " +
                           std::to_string(single_copies) + " times");
    for (VertexId b = a + 1; b < m; ++b) {
      if (pieces.multiplicity(HyperedgeKey::pair(a, b)) != pair_copies)
        throw EmbedError(EmbedError::Kind::bad_instance,
                         "pair {" + std::to_string(a) + "," +
                             std::to_string(b) + "} must appear " +
                             std::to_string(pair_copies) + " times");
      for (VertexId c = b + 1; c < m; ++c)
        if (pieces.multiplicity(HyperedgeKey::triple(a, b, c)) != 1)
          throw EmbedError(EmbedError::Kind::bad_instance,
                           "triple {" + std::to_string(a) + "," +
                               std::to_string(b) + "," + std::to_string(c) +
                               "} must appear exactly once");
    }
  }
  Count expected_total = binom(m, 3) + pair_copies * binom(m, 2) +
                         single_copies * static_cast<Count>(m);
  if (pieces.total_edges() != expected_total)
    throw EmbedError(EmbedError::Kind::bad_instance,
                     "piece census does not match the host order");

  PiecesInstance inst;
  inst.m = m;
  inst.n = n;
  inst.r = r;
  inst.pieces = std::move(pieces);
  return inst;
}

RestrictedReport check_conditions_restricted(const PiecesInstance& inst) {
  RestrictedReport rep;
  rep.edge_divisible = (inst.r * inst.n) % 3 == 0;
  if (!rep.edge_divisible) rep.notes.push_back("3 does not divide r*n");
  const Count host_degree = binom(inst.n - 1, 2);
  rep.degree_divisible = host_degree % inst.r == 0;
  rep.k = rep.degree_divisible ? host_degree / inst.r : 0;
  if (!rep.degree_divisible)
    rep.notes.push_back("r does not divide C(n-1,2) = " +
                        std::to_string(host_degree));

  auto colors = inst.pieces.colors_used();
  rep.colors_exact = rep.degree_divisible &&
                     static_cast<Count>(colors.size()) == rep.k &&
                     !colors.empty() && colors.front() == 1 &&
                     colors.back() == rep.k;
  if (!rep.colors_exact)
    rep.notes.push_back("colors must be exactly 1..C(n-1,2)/r, all present");

  const Count census_colors = rep.k > 0 ? rep.k : (colors.empty() ? 0 : colors.back());
  rep.census.resize(census_colors);
  for (const auto& [kc, cnt] : inst.pieces.table()) {
    const auto js = static_cast<std::size_t>(kc.second);
    if (js >= rep.census.three_old.size()) continue;
    switch (kc.first.hinge_total()) {
      case 3: rep.census.three_old[js] += cnt; break;
      case 2: rep.census.two_old[js] += cnt; break;
      default: rep.census.one_old[js] += cnt; break;
    }
  }

  rep.degrees_exact = true;
  for (VertexId v = 0; v < inst.m && rep.degrees_exact; ++v)
    for (ColorId j = 1; j <= census_colors; ++j)
      if (inst.pieces.degree(v, j) != inst.r) {
        rep.degrees_exact = false;
        rep.notes.push_back("vertex " + std::to_string(v) +
                            " misses degree r in color " + std::to_string(j));
        break;
      }

  rep.fill_nonneg = true;
  for (ColorId j = 1; j <= census_colors; ++j) {
    const auto js = static_cast<std::size_t>(j);
    const Count cover = rep.census.two_old[js] + 2 * rep.census.three_old[js];
    if (3 * cover < inst.r * (3LL * inst.m - inst.n)) {
      rep.fill_nonneg = false;
      rep.notes.push_back("color " + std::to_string(j) +
                          " has too little pair and triple mass");
    }
    if (rep.edge_divisible)
      rep.census.zero_old[js] =
          inst.r * inst.n / 3 - inst.r * inst.m + cover;
  }
  return rep;
}

Hypergraph build_f_prime(const PiecesInstance& inst) {
  const VertexId u = inst.m;
  HypergraphBuilder b;
  b.add_vertices(inst.m);
  b.add_vertex(u);
  for (const auto& [kc, cnt] : inst.pieces.table()) {
    const HyperedgeKey& key = kc.first;
    std::vector<VertexId> verts(key.verts().begin(), key.verts().end());
    while (verts.size() < 3) verts.push_back(u);
    b.add_edge(HyperedgeKey::from_verts(verts), kc.second, cnt);
  }
  const Count new_edges = binom(inst.n - inst.m, 3);
  if (new_edges > 0)
    b.add_edge(HyperedgeKey::of({u, u, u}), kUncolored, new_edges);
  return std::move(b).build();
}

Hypergraph embed_restricted(const PiecesInstance& inst, std::uint64_t seed,
                            const DetachOptions& options) {
  RestrictedReport rep = check_conditions_restricted(inst);
  if (!rep.all_pass()) {
    std::ostringstream msg;
    msg << "piece instance ineligible:";
    for (const auto& note : rep.notes) msg << ' ' << note << ';';
    throw EmbedError(EmbedError::Kind::ineligible, msg.str());
  }
  if (inst.n == inst.m) return inst.pieces;

  Hypergraph f_prime = build_f_prime(inst);
  Hypergraph::Table table = f_prime.table();
  const VertexId u = inst.m;
  table.erase({HyperedgeKey::of({u, u, u}), kUncolored});
  Count total = 0;
  for (ColorId j = 1; j <= rep.k; ++j) {
    const Count fill = rep.census.zero_old[static_cast<std::size_t>(j)];
    if (fill < 0)
      throw EmbedError(EmbedError::Kind::negative_fill,
                       "color " + std::to_string(j) +
                           " has negative new-edge quota");
    if (fill > 0) table[{HyperedgeKey::of({u, u, u}), j}] += fill;
    total += fill;
  }
  if (total != binom(inst.n - inst.m, 3))
    throw EmbedError(EmbedError::Kind::quota_mismatch,
                     "new-edge quotas sum to " + std::to_string(total) +
                         ", expected C(n-m,3)");

  HypergraphBuilder hb;
  hb.add_vertex_set(f_prime.vertices());
  for (const auto& [kc, cnt] : table) hb.add_edge(kc.first, kc.second, cnt);
  Hypergraph colored = std::move(hb).build();

  NumberFunction g = NumberFunction::ones_on(colored);
  g.g[u] = inst.n - inst.m;
  return detach(colored, g, mix_seed(seed, 4), options).detached;
}

PiecesInstance random_pieces_instance(int m, int n, Count r,
                                      std::uint64_t seed) {
  EmbeddingInstance full =
      random_embedding_instance(m, n, r, mix_seed(seed, 0x9e));
  EmbedBuild build = step1_greedy(full, mix_seed(seed, 0x3c));
  build = step2_forced(std::move(build));
  build = step3_fill(std::move(build));

  const VertexId u = build.added_vertex;
  HypergraphBuilder b;
  b.add_vertices(m);
  for (const auto& [kc, cnt] : build.h.table()) {
    const HyperedgeKey& key = kc.first;
    const int at_u = key.hinge_count(u);
    if (at_u == 3) continue;
    std::vector<VertexId> verts;
    for (VertexId v : key.verts())
      if (v != u) verts.push_back(v);
    b.add_edge(HyperedgeKey::from_verts(verts), kc.second, cnt);
  }
  return make_pieces_instance(std::move(b).build(), n, r);
}

}  // namespace hyperfact
