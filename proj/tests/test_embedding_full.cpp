#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperfact/embedding.hpp"
#include "hyperfact/factorization.hpp"
#include "hyperfact/verifier.hpp"
#include "support/fixtures.hpp"

using namespace hyperfact;
using hyperfact::testing::mono_complete;
using hyperfact::testing::rainbow_complete;

TEST_CASE("minimum host orders") {
  CHECK(bound_min_n(4) == 12);
  CHECK(bound_min_n(5) == 15);
  CHECK(bound_min_n(7) == 22);
  CHECK_THROWS_AS(bound_min_n(3), std::invalid_argument);
  for (int m = 4; m <= 200; ++m) CHECK(bound_min_n(m) >= 3 * m);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(make_embedding_instance(rainbow_complete(4), 3, 1),
                  EmbedError);
  CHECK_THROWS_AS(make_embedding_instance(rainbow_complete(4), 12, 0),
                  EmbedError);

  // missing triple
  HypergraphBuilder missing;
  missing.add_vertices(4);
  missing.add_edge(HyperedgeKey::triple(0, 1, 2), 1);
  CHECK_THROWS_AS(make_embedding_instance(std::move(missing).build(), 12, 1),
                  EmbedError);

  // uncolored triple
  HypergraphBuilder uncolored;
  uncolored.add_vertices(4);
  int idx = 0;
  for (VertexId a = 0; a < 4; ++a)
    for (VertexId b = a + 1; b < 4; ++b)
      for (VertexId c = b + 1; c < 4; ++c)
        uncolored.add_edge(HyperedgeKey::triple(a, b, c), idx++ == 0 ? 0 : 1);
  CHECK_THROWS_AS(make_embedding_instance(std::move(uncolored).build(), 12, 1),
                  EmbedError);
}

TEST_CASE("eligibility reports") {
  EmbeddingInstance rainbow4 =
      make_embedding_instance(rainbow_complete(4), 12, 1);
  EligibilityReport rep = check_conditions(rainbow4);
  CHECK(rep.conditions_pass());
  CHECK(rep.bound_ok);
  CHECK(rep.k == 55);

  EmbeddingInstance bad_rate =
      make_embedding_instance(rainbow_complete(4), 12, 2);
  CHECK_FALSE(check_conditions(bad_rate).degree_divisible);

  EmbeddingInstance obstructed = make_embedding_instance(
      generate_r_factorization(7, 3, 0), 13, 3);
  EligibilityReport obstructed_rep = check_conditions(obstructed);
  CHECK(obstructed_rep.conditions_pass());
  CHECK_FALSE(obstructed_rep.bound_ok);
  CHECK(obstructed_rep.min_host == 22);
}

TEST_CASE("greedy pair stage") {
  EmbeddingInstance inst = make_embedding_instance(rainbow_complete(4), 12, 1);
  EmbedBuild build = step1_greedy(inst, 0);
  Count added = 0;
  for (ColorId j = 1; j <= build.k; ++j)
    added += build.census.two_old[static_cast<std::size_t>(j)];
  CHECK(added == 48);
  for (VertexId v = 0; v < 4; ++v)
    for (ColorId j = 1; j <= build.k; ++j)
      CHECK(build.h.degree(v, j) <= 1);
  for (VertexId v = 0; v < 4; ++v)
    for (VertexId w = v + 1; w < 4; ++w)
      CHECK(build.h.multiplicity(HyperedgeKey::triple(4, v, w)) == 8);

  EmbeddingInstance mono =
      make_embedding_instance(mono_complete(5), 15, 7);
  EmbedBuild mono_build = step1_greedy(mono, 0);
  Count mono_added = 0;
  for (ColorId j = 1; j <= mono_build.k; ++j)
    mono_added += mono_build.census.two_old[static_cast<std::size_t>(j)];
  CHECK(mono_build.k == 13);
  CHECK(mono_added == 100);
}

TEST_CASE("forced stage saturates old vertices") {
  EmbeddingInstance inst = make_embedding_instance(rainbow_complete(4), 12, 1);
  EmbedBuild build = step2_forced(step1_greedy(inst, 0));
  for (VertexId v = 0; v < 4; ++v) {
    CHECK(build.h.degree(v) == binom(11, 2));
    for (ColorId j = 1; j <= build.k; ++j)
      CHECK(build.h.degree(v, j) == 1);
    CHECK(build.h.multiplicity(HyperedgeKey::of({4, 4, v})) == binom(8, 2));
  }
}

TEST_CASE("fill stage meets the census identities") {
  EmbeddingInstance inst = make_embedding_instance(rainbow_complete(4), 12, 1);
  EmbedBuild build = step3_fill(step2_forced(step1_greedy(inst, 0)));
  const Count r = 1;
  const int m = 4, n = 12;
  Count fill_total = 0;
  for (ColorId j = 1; j <= build.k; ++j) {
    const auto js = static_cast<std::size_t>(j);
    CHECK(r * m == 3 * build.census.three_old[js] +
                       2 * build.census.two_old[js] + build.census.one_old[js]);
    CHECK(build.census.zero_old[js] >= 0);
    fill_total += build.census.zero_old[js];
    CHECK(build.h.degree(build.added_vertex, j) == r * (n - m));
  }
  CHECK(fill_total == binom(n - m, 3));
  CHECK(build.h.multiplicity(HyperedgeKey::of({4, 4, 4})) == binom(8, 3));
}

TEST_CASE("embedding a rainbow order-4 instance") {
  EmbeddingInstance inst = make_embedding_instance(rainbow_complete(4), 12, 1);
  Hypergraph host = embed(inst, 0);
  CHECK(host.num_vertices() == 12);
  CHECK(host.total_edges() == 220);
  auto colors = host.colors_used();
  CHECK(colors.size() == 55);
  for (ColorId j : colors) {
    CHECK(host.edge_count(j) == 4);
    CHECK(is_r_factor(host, j, 1));
  }
  // original triples keep their colors
  for (const auto& [kc, cnt] : inst.input.table())
    CHECK(host.count(kc.first, kc.second) == cnt);
  CHECK(verify_embedding(inst.input, host, EmbeddingMode::full, 1).overall);
}

TEST_CASE("embedding a monochromatic order-5 instance") {
  EmbeddingInstance inst = make_embedding_instance(mono_complete(5), 15, 7);
  Hypergraph host = embed(inst, 1);
  auto colors = host.colors_used();
  CHECK(colors.size() == 13);
  for (ColorId j : colors) {
    CHECK(host.edge_count(j) == 35);
    CHECK(is_r_factor(host, j, 7));
  }
  CHECK(verify_embedding(inst.input, host, EmbeddingMode::full, 7).overall);
}

TEST_CASE("embed refuses hosts below the bound unless asked") {
  EmbeddingInstance inst = make_embedding_instance(
      generate_r_factorization(7, 3, 0), 13, 3);
  CHECK_THROWS_AS(embed(inst, 0), EmbedError);
}

TEST_CASE("census identities on random instances") {
  int built = 0;
  for (std::uint64_t seed = 0; built < 12; ++seed) {
    const int m = 4 + static_cast<int>(seed % 3);
    const int n = bound_min_n(m);
    const Count r = m == 5 ? 7 : (m == 6 ? 3 : 5);
    EmbeddingInstance inst = random_embedding_instance(m, n, r, seed);
    EmbedBuild build = step3_fill(step2_forced(step1_greedy(inst, seed)));
    Count fill_total = 0;
    for (ColorId j = 1; j <= build.k; ++j) {
      const auto js = static_cast<std::size_t>(j);
      CHECK(r * m == 3 * build.census.three_old[js] +
                         2 * build.census.two_old[js] +
                         build.census.one_old[js]);
      fill_total += build.census.zero_old[js];
      CHECK(build.h.degree(build.added_vertex, j) == r * (n - m));
    }
    CHECK(fill_total == binom(n - m, 3));
    ++built;
  }
}

TEST_CASE("counterexample construction") {
  EmbeddingInstance c7 = counterexample(7);
  CHECK(c7.m == 7);
  CHECK(c7.n == 13);
  CHECK(c7.r == 3);
  CHECK(c7.q == 5);
  EligibilityReport rep = check_conditions(c7);
  CHECK(rep.conditions_pass());
  CHECK_FALSE(rep.bound_ok);

  EmbeddingInstance c13 = counterexample(13);
  CHECK(c13.r == 3);
  CHECK(c13.n == 25);

  CHECK_THROWS_AS(counterexample(5), EmbedError);
}

TEST_CASE("counting witness") {
  EmbeddingInstance c7 = counterexample(7);
  WitnessReport w = infeasibility_witness(c7);
  CHECK(w.applicable);
  CHECK(w.infeasible);
  CHECK(w.required_new_edges == 30);
  CHECK(w.available_new_edges == 20);

  EmbeddingInstance wider = make_embedding_instance(
      generate_r_factorization(7, 3, 0), 14, 3);
  WitnessReport silent = infeasibility_witness(wider);
  CHECK(silent.applicable);
  CHECK_FALSE(silent.infeasible);

  EmbeddingInstance rainbow4 =
      make_embedding_instance(rainbow_complete(4), 12, 1);
  WitnessReport na = infeasibility_witness(rainbow4);
  CHECK_FALSE(na.applicable);
}

TEST_CASE("small orders embed when every quota stays nonnegative") {
  EmbeddingInstance wide = make_embedding_instance(mono_complete(3), 9, 1);
  Hypergraph host9 = embed(wide, 0);
  CHECK(host9.num_vertices() == 9);
  CHECK(verify_embedding(wide.input, host9, EmbeddingMode::full, 1).overall);

  // at rate 1 every parallel class takes at most one pair edge, so the
  // greedy spreads across all ten classes and the quotas stay nonnegative
  EmbeddingInstance matchings = make_embedding_instance(mono_complete(3), 6, 1);
  Hypergraph host6 = embed(matchings, 0);
  CHECK(verify_embedding(matchings.input, host6, EmbeddingMode::full, 1)
            .overall);

  // at rate 2 the spread depends on the greedy order: some seeds cover all
  // five classes, others leave one dry and are refused rather than patched
  EmbeddingInstance tight = make_embedding_instance(mono_complete(3), 6, 2);
  Hypergraph host6r2 = embed(tight, 0);
  CHECK(verify_embedding(tight.input, host6r2, EmbeddingMode::full, 2)
            .overall);
  try {
    embed(tight, 6);
    CHECK_MESSAGE(false, "expected the small-order refusal under seed 6");
  } catch (const EmbedError& e) {
    CHECK(e.kind() == EmbedError::Kind::unsupported);
  }
}

TEST_CASE("a host that adds nothing returns the input") {
  EmbeddingInstance identity = make_embedding_instance(mono_complete(4), 4, 3);
  CHECK(embed(identity, 0) == identity.input);

  // four colors cannot fit the single-class budget of an identical host
  EmbeddingInstance not_factored =
      make_embedding_instance(rainbow_complete(4), 4, 3);
  CHECK_THROWS_AS(embed(not_factored, 0), EmbedError);
}

TEST_CASE("monotone restriction of the output") {
  EmbeddingInstance inst = make_embedding_instance(rainbow_complete(5), 15, 1);
  Hypergraph host = embed(inst, 3);
  for (const auto& [kc, cnt] : host.table()) {
    bool all_old = true;
    for (VertexId v : kc.first.verts()) all_old = all_old && v < 5;
    if (all_old) CHECK(inst.input.count(kc.first, kc.second) == cnt);
  }
}
