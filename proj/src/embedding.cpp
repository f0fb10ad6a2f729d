#include "hyperfact/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hyperfact/factorization.hpp"
#include "hyperfact/rng.hpp"

namespace hyperfact {

void ColorCensus::resize(Count colors) {
  k = colors;
  three_old.assign(static_cast<std::size_t>(k) + 1, 0);
  two_old.assign(static_cast<std::size_t>(k) + 1, 0);
  one_old.assign(static_cast<std::size_t>(k) + 1, 0);
  zero_old.assign(static_cast<std::size_t>(k) + 1, 0);
}

EmbeddingInstance make_embedding_instance(Hypergraph input, int n, Count r) {
  const int m = input.num_vertices();
  if (m < 3)
    throw EmbedError(EmbedError::Kind::bad_instance,
                     "instance needs at least three vertices");
  for (int i = 0; i < m; ++i)
    if (input.vertices()[static_cast<std::size_t>(i)] != i)
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

  Count edges = 0;
  for (const auto& [kc, cnt] : input.table()) {
    if (!kc.first.is_simple_triple())
      throw EmbedError(EmbedError::Kind::bad_instance,
                       "input edge " + kc.first.to_string() +
                           " is not a plain triple");
    if (kc.second == kUncolored)
      throw EmbedError(EmbedError::Kind::bad_instance,
                       "input triple " + kc.first.to_string() + " is uncolored");
    edges += cnt;
  }
  if (edges != binom(m, 3))
    throw EmbedError(EmbedError::Kind::bad_instance,
                     "input must contain each triple exactly once");
  for (VertexId a = 0; a < m; ++a)
    for (VertexId b = a + 1; b < m; ++b)
      for (VertexId c = b + 1; c < m; ++c)
        if (input.multiplicity(HyperedgeKey::triple(a, b, c)) != 1)
          throw EmbedError(EmbedError::Kind::bad_instance,
                           "triple {" + std::to_string(a) + "," +
                               std::to_string(b) + "," + std::to_string(c) +
                               "} must appear exactly once");

  EmbeddingInstance inst;
  inst.m = m;
  inst.n = n;
  inst.r = r;
  inst.q = static_cast<int>(input.colors_used().size());
  inst.input = std::move(input);
  return inst;
}

int bound_min_n(int m) {
  if (m < 4)
    throw std::invalid_argument("bound_min_n: defined for orders >= 4");
  const Count d = 8LL * m * m - 16LL * m - 7;
  for (int n = 2 * m + 1;; ++n) {
    const Count t = 2LL * n - 4LL * m + 1;
    if (t > 0 && t * t > d) return n;
  }
}

EligibilityReport check_conditions(const EmbeddingInstance& inst) {
  EligibilityReport rep;
  rep.edge_divisible = (inst.r * inst.n) % 3 == 0;
  if (!rep.edge_divisible) rep.notes.push_back("3 does not divide r*n");
  const Count host_degree = binom(inst.n - 1, 2);
  rep.degree_divisible = host_degree % inst.r == 0;
  rep.k = rep.degree_divisible ? host_degree / inst.r : 0;
  if (!rep.degree_divisible)
    rep.notes.push_back("r does not divide C(n-1,2) = " +
                        std::to_string(host_degree));

  rep.colors_within = rep.degree_divisible;
  for (ColorId j : inst.input.colors_used()) {
    if (j > rep.k) {
      rep.colors_within = false;
      rep.notes.push_back("color id " + std::to_string(j) +
                          " exceeds the class budget");
      break;
    }
  }
  if (rep.degree_divisible && inst.q > rep.k) {
    rep.colors_within = false;
    rep.notes.push_back("input uses more colors than C(n-1,2)/r");
  }

  rep.degrees_within = true;
  for (VertexId v = 0; v < inst.m && rep.degrees_within; ++v)
    for (ColorId j : inst.input.colors_used())
      if (inst.input.degree(v, j) > inst.r) {
        rep.degrees_within = false;
        rep.notes.push_back("vertex " + std::to_string(v) + " has color-" +
                            std::to_string(j) + " degree above r");
        break;
      }

  rep.bound_required = inst.m >= 4;
  if (rep.bound_required) {
    rep.min_host = bound_min_n(inst.m);
    rep.bound_ok = inst.n >= rep.min_host;
    if (!rep.bound_ok)
      rep.notes.push_back("host order " + std::to_string(inst.n) +
                          " below the admissible minimum " +
                          std::to_string(rep.min_host));
  } else {
    rep.bound_ok = true;
  }
  return rep;
}

EmbedBuild step1_greedy(const EmbeddingInstance& inst, std::uint64_t seed) {
  EligibilityReport rep = check_conditions(inst);
  if (!rep.conditions_pass()) {
    std::ostringstream msg;
    msg << "instance ineligible:";
    for (const auto& note : rep.notes) msg << ' ' << note << ';';
    throw EmbedError(EmbedError::Kind::ineligible, msg.str());
  }

  EmbedBuild build;
  build.inst = inst;
  build.k = rep.k;
  build.added_vertex = inst.m;
  build.stage = 1;
  build.census.resize(build.k);
  for (ColorId j : inst.input.colors_used())
    build.census.three_old[static_cast<std::size_t>(j)] =
        inst.input.edge_count(j);

  const int m = inst.m;
  const Count r = inst.r;
  const Count copies = inst.n - m;
  const VertexId u = build.added_vertex;

  std::vector<std::vector<Count>> deg(
      static_cast<std::size_t>(m),
      std::vector<Count>(static_cast<std::size_t>(build.k) + 1, 0));
  for (VertexId v = 0; v < m; ++v)
    for (ColorId j : inst.input.colors_used())
      deg[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)] =
          inst.input.degree(v, j);

  std::vector<ColorId> order(static_cast<std::size_t>(build.k));
  std::iota(order.begin(), order.end(), 1);
  SplitMix64 rng(mix_seed(seed, 1));
  shuffle_in_place(order, rng);

  Hypergraph::Table table = inst.input.table();
  for (VertexId v = 0; v < m; ++v) {
    for (VertexId w = v + 1; w < m; ++w) {
      for (Count copy = 0; copy < copies; ++copy) {
        ColorId chosen = kUncolored;
        for (ColorId j : order) {
          if (deg[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)] <
                  r &&
              deg[static_cast<std::size_t>(w)][static_cast<std::size_t>(j)] <
                  r) {
            chosen = j;
            break;
          }
        }
        if (chosen == kUncolored)
          throw EmbedError(EmbedError::Kind::greedy_stuck,
                           "no color left for a pair edge at {" +
                               std::to_string(v) + "," + std::to_string(w) +
                               "}");
        table[{HyperedgeKey::triple(u, v, w), chosen}] += 1;
        deg[static_cast<std::size_t>(v)][static_cast<std::size_t>(chosen)] += 1;
        deg[static_cast<std::size_t>(w)][static_cast<std::size_t>(chosen)] += 1;
        build.census.two_old[static_cast<std::size_t>(chosen)] += 1;
      }
    }
  }

  HypergraphBuilder hb;
  hb.add_vertices(m);
  hb.add_vertex(u);
  for (const auto& [kc, cnt] : table) hb.add_edge(kc.first, kc.second, cnt);
  build.h = std::move(hb).build();
  return build;
}

EmbedBuild step2_forced(EmbedBuild build) {
  if (build.stage != 1)
    throw EmbedError(EmbedError::Kind::quota_mismatch,
                     "step2_forced expects the stage-1 hypergraph");
  const int m = build.inst.m;
  const Count r = build.inst.r;
  const Count pair_copies = binom(build.inst.n - m, 2);
  const VertexId u = build.added_vertex;

  Hypergraph::Table table = build.h.table();
  for (VertexId v = 0; v < m; ++v) {
    Count assigned = 0;
    for (ColorId j = 1; j <= build.k; ++j) {
      Count quota = r - build.h.degree(v, j);
      if (quota < 0)
        throw EmbedError(EmbedError::Kind::quota_mismatch,
                         "per-color degree exceeded r before the forced step");
      if (quota == 0) continue;
      table[{HyperedgeKey::of({u, u, v}), j}] += quota;
      build.census.one_old[static_cast<std::size_t>(j)] += quota;
      assigned += quota;
    }
    if (assigned != pair_copies)
      throw EmbedError(EmbedError::Kind::quota_mismatch,
                       "forced quotas at vertex " + std::to_string(v) +
                           " sum to " + std::to_string(assigned) +
                           ", expected " + std::to_string(pair_copies));
  }

  HypergraphBuilder hb;
  hb.add_vertex_set(build.h.vertices());
  for (const auto& [kc, cnt] : table) hb.add_edge(kc.first, kc.second, cnt);
  build.h = std::move(hb).build();
  build.stage = 2;
  return build;
}

EmbedBuild step3_fill(EmbedBuild build) {
  if (build.stage != 2)
    throw EmbedError(EmbedError::Kind::quota_mismatch,
                     "step3_fill expects the stage-2 hypergraph");
  const int m = build.inst.m;
  const int n = build.inst.n;
  const Count r = build.inst.r;
  const VertexId u = build.added_vertex;

  Count total = 0;
  for (ColorId j = 1; j <= build.k; ++j) {
    const auto js = static_cast<std::size_t>(j);
    Count fill = r * n / 3 - r * m + build.census.two_old[js] +
                 2 * build.census.three_old[js];
    if (fill < 0) {
      if (m <= 3)
        throw EmbedError(EmbedError::Kind::unsupported,
                         "small-order instance leaves color " +
                             std::to_string(j) +
                             " with a negative new-edge quota");
      throw EmbedError(EmbedError::Kind::negative_fill,
                       "color " + std::to_string(j) +
                           " has negative new-edge quota " +
                           std::to_string(fill));
    }
    build.census.zero_old[js] = fill;
    total += fill;
  }
  if (total != binom(n - m, 3))
    throw EmbedError(EmbedError::Kind::quota_mismatch,
                     "new-edge quotas sum to " + std::to_string(total) +
                         ", expected C(n-m,3) = " +
                         std::to_string(binom(n - m, 3)));

  Hypergraph::Table table = build.h.table();
  for (ColorId j = 1; j <= build.k; ++j) {
    Count fill = build.census.zero_old[static_cast<std::size_t>(j)];
    if (fill > 0) table[{HyperedgeKey::of({u, u, u}), j}] += fill;
  }

  HypergraphBuilder hb;
  hb.add_vertex_set(build.h.vertices());
  for (const auto& [kc, cnt] : table) hb.add_edge(kc.first, kc.second, cnt);
  build.h = std::move(hb).build();
  build.stage = 3;

  const Count expected = r * (n - m);
  for (ColorId j = 1; j <= build.k; ++j)
    if (build.h.degree(u, j) != expected)
      throw EmbedError(EmbedError::Kind::quota_mismatch,
                       "added vertex misses its color-" + std::to_string(j) +
                           " degree target");
  return build;
}

Hypergraph embed(const EmbeddingInstance& inst, std::uint64_t seed,
                 const EmbedOptions& options) {
  EligibilityReport rep = check_conditions(inst);
  if (!rep.conditions_pass()) {
    std::ostringstream msg;
    msg << "instance ineligible:";
    for (const auto& note : rep.notes) msg << ' ' << note << ';';
    throw EmbedError(EmbedError::Kind::ineligible, msg.str());
  }

  if (inst.n == inst.m) {
    // nothing to construct; the input must already be an r-factorization
    for (VertexId v = 0; v < inst.m; ++v)
      for (ColorId j = 1; j <= rep.k; ++j)
        if (inst.input.degree(v, j) != inst.r)
          throw EmbedError(EmbedError::Kind::unsupported,
                           "host adds no vertices and the input is not "
                           "already an r-factorization");
    return inst.input;
  }

  if (options.require_bound && rep.bound_required && !rep.bound_ok) {
    std::ostringstream msg;
    msg << "instance ineligible:";
    for (const auto& note : rep.notes) msg << ' ' << note << ';';
    throw EmbedError(EmbedError::Kind::ineligible, msg.str());
  }

  EmbedBuild build = step1_greedy(inst, seed);
  build = step2_forced(std::move(build));
  build = step3_fill(std::move(build));

  NumberFunction g = NumberFunction::ones_on(build.h);
  g.g[build.added_vertex] = inst.n - inst.m;
  DetachmentResult detached =
      detach(build.h, g, mix_seed(seed, 4), options.detach);
  return detached.detached;
}

EmbeddingInstance counterexample(int m) {
  if (m < 3)
    throw EmbedError(EmbedError::Kind::bad_instance,
                     "counterexample needs m >= 3");
  std::vector<std::string> reasons;
  for (Count r = 3; r <= m - 1; r += 3) {
    if ((m - 1) % r != 0) {
      reasons.push_back("r=" + std::to_string(r) + " does not divide m-1");
      continue;
    }
    if (!factorization_exists(m, r)) {
      reasons.push_back("r=" + std::to_string(r) +
                        " admits no factorization of the input");
      continue;
    }
    Hypergraph input = generate_r_factorization(m, r, 0);
    return make_embedding_instance(std::move(input), 2 * m - 1, r);
  }
  std::ostringstream msg;
  msg << "no rate works for m=" << m
      << ": need a multiple of 3 dividing m-1=" << (m - 1)
      << " and C(m-1,2)=" << binom(m - 1, 2);
  for (const auto& reason : reasons) msg << "; " << reason;
  throw EmbedError(EmbedError::Kind::no_feasible_r, msg.str());
}

WitnessReport infeasibility_witness(const EmbeddingInstance& inst) {
  WitnessReport w;
  for (ColorId j : inst.input.colors_used())
    for (VertexId v = 0; v < inst.m; ++v)
      if (inst.input.degree(v, j) != inst.r) {
        w.detail = "input is not an r-factorization";
        return w;
      }
  if (static_cast<Count>(inst.q) * inst.r != binom(inst.m - 1, 2)) {
    w.detail = "input color classes do not partition the edge set";
    return w;
  }
  w.applicable = true;
  w.colors = inst.q;
  w.available_new_edges = binom(inst.n - inst.m, 3);
  const Count required_times_3 =
      static_cast<Count>(inst.q) * inst.r * (inst.n - inst.m);
  if (required_times_3 % 3 != 0) {
    w.infeasible = true;
    w.detail = "per-color new-vertex edge count is not an integer";
    return w;
  }
  w.required_new_edges = required_times_3 / 3;
  w.infeasible = w.required_new_edges > w.available_new_edges;
  std::ostringstream detail;
  detail << "new-vertex edges required " << w.required_new_edges
         << (w.infeasible ? " > " : " <= ") << w.available_new_edges
         << " available";
  w.detail = detail.str();
  return w;
}

EmbeddingInstance random_embedding_instance(int m, int n, Count r,
                                            std::uint64_t seed) {
  if (m < 3 || n < m || r < 1)
    throw std::invalid_argument("random_embedding_instance: bad parameters");
  const Count host_degree = binom(n - 1, 2);
  if ((r * n) % 3 != 0 || host_degree % r != 0)
    throw std::invalid_argument(
        "random_embedding_instance: (m, n, r) fails the divisibility "
        "conditions");
  const Count k = host_degree / r;

  SplitMix64 rng(mix_seed(seed, 0x1257));
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::vector<Count>> deg(
        static_cast<std::size_t>(m),
        std::vector<Count>(static_cast<std::size_t>(k) + 1, 0));
    HypergraphBuilder b;
    b.add_vertices(m);
    bool ok = true;
    for (VertexId a = 0; a < m && ok; ++a)
      for (VertexId bb = a + 1; bb < m && ok; ++bb)
        for (VertexId c = bb + 1; c < m && ok; ++c) {
          ColorId chosen = kUncolored;
          for (int tries = 0; tries < 64 && chosen == kUncolored; ++tries) {
            auto j = static_cast<ColorId>(
                rng.below(static_cast<std::uint64_t>(k)) + 1);
            if (deg[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] <
                    r &&
                deg[static_cast<std::size_t>(bb)][static_cast<std::size_t>(
                    j)] < r &&
                deg[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] <
                    r)
              chosen = j;
          }
          if (chosen == kUncolored) {
            for (ColorId j = 1; j <= k && chosen == kUncolored; ++j)
              if (deg[static_cast<std::size_t>(a)]
                     [static_cast<std::size_t>(j)] < r &&
                  deg[static_cast<std::size_t>(bb)]
                     [static_cast<std::size_t>(j)] < r &&
                  deg[static_cast<std::size_t>(c)]
                     [static_cast<std::size_t>(j)] < r)
                chosen = j;
          }
          if (chosen == kUncolored) {
            ok = false;
            break;
          }
          b.add_edge(HyperedgeKey::triple(a, bb, c), chosen);
          deg[static_cast<std::size_t>(a)][static_cast<std::size_t>(chosen)]++;
          deg[static_cast<std::size_t>(bb)][static_cast<std::size_t>(chosen)]++;
          deg[static_cast<std::size_t>(c)][static_cast<std::size_t>(chosen)]++;
        }
    if (!ok) continue;
    return make_embedding_instance(std::move(b).build(), n, r);
  }
  throw std::runtime_error(
      "random_embedding_instance: could not color the input");
}

}  // namespace hyperfact
