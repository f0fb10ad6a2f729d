#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfact/detachment.hpp"
#include "hyperfact/hypergraph.hpp"

namespace hyperfact {

class EmbedError : public std::runtime_error {
 public:
  enum class Kind {
    bad_instance,   // input is not a fully colored complete triple system
    ineligible,     // an eligibility condition fails
    greedy_stuck,   // pair-edge coloring ran out of colors
    quota_mismatch, // internal bookkeeping broke
    negative_fill,  // a new-edge color quota came out negative
    unsupported,    // small orders the construction does not cover
    no_feasible_r,  // no rate yields the requested instance family
  };

  EmbedError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A fully colored K_m^3 to be embedded into an r-factorization of K_n^3.
struct EmbeddingInstance {
  int m = 0;
  int n = 0;
  Count r = 0;
  int q = 0;  // number of colors used by the input
  Hypergraph input;
};

// Validates that input is K_m^3 on dense ids 0..m-1 with every triple colored.
EmbeddingInstance make_embedding_instance(Hypergraph input, int n, Count r);

// Smallest admissible host order for m >= 4: the least n with
// (2n - 4m + 1)^2 > 8m^2 - 16m - 7 and 2n - 4m + 1 > 0, evaluated in exact
// integer arithmetic.
int bound_min_n(int m);

struct EligibilityReport {
  bool edge_divisible = false;    // 3 | r n
  bool degree_divisible = false;  // r | C(n-1, 2)
  bool colors_within = false;     // q <= k
  bool degrees_within = false;    // per-color input degree <= r everywhere
  bool bound_required = false;    // host bound applies only when m >= 4
  bool bound_ok = false;
  int min_host = 0;  // bound_min_n(m) when applicable
  Count k = 0;       // C(n-1,2) / r when degree_divisible
  std::vector<std::string> notes;

  bool conditions_pass() const {
    return edge_divisible && degree_divisible && colors_within &&
           degrees_within;
  }
  bool all_pass() const { return conditions_pass() && bound_ok; }
};

EligibilityReport check_conditions(const EmbeddingInstance& inst);

// Per-color counts of edges by how many of their vertices are original:
// three_old edges lie inside the original vertex set, two_old/one_old meet it
// in two/one vertices, zero_old lie entirely among added vertices.
struct ColorCensus {
  Count k = 0;
  std::vector<Count> three_old, two_old, one_old, zero_old;  // index 1..k

  void resize(Count colors);
};

// Staged construction state shared by the pipeline steps below.
struct EmbedBuild {
  EmbeddingInstance inst;
  Count k = 0;
  VertexId added_vertex = -1;
  int stage = 0;
  Hypergraph h;
  ColorCensus census;
};

// Adds the amalgamated vertex u and n-m parallel edges over every original
// pair, coloring all of them greedily while keeping every original vertex's
// per-color degree at most r. Fills census.two_old.
EmbedBuild step1_greedy(const EmbeddingInstance& inst, std::uint64_t seed);

// Adds C(n-m, 2) parallel {u,u,v} edges per original vertex and colors them
// so every original vertex reaches per-color degree exactly r. Fills
// census.one_old.
EmbedBuild step2_forced(EmbedBuild build);

// Adds C(n-m, 3) copies of {u,u,u} colored by the census quotas. Fills
// census.zero_old.
EmbedBuild step3_fill(EmbedBuild build);

struct EmbedOptions {
  bool require_bound = true;
  DetachOptions detach;
};

// Full pipeline: eligibility checks, the three coloring steps, then a
// detachment of u into n-m vertices. The result is a colored K_n^3 whose
// color classes are r-factors and whose original triples keep their colors.
Hypergraph embed(const EmbeddingInstance& inst, std::uint64_t seed,
                 const EmbedOptions& options = {});

// Instance on n = 2m-1 that passes every divisibility and degree condition
// yet admits no embedding: an r-factorization input with 3 | r and r | m-1.
EmbeddingInstance counterexample(int m);

struct WitnessReport {
  bool applicable = false;  // input must itself be an r-factorization
  bool infeasible = false;
  Count colors = 0;
  Count required_new_edges = 0;   // new-vertex edges all original colors need
  Count available_new_edges = 0;  // C(n-m, 3)
  std::string detail;
};

// Counting obstruction: when the input colors are already r-regular, their
// edges outside the original vertices must fit among the new ones.
WitnessReport infeasibility_witness(const EmbeddingInstance& inst);

// Random fully colored K_m^3 meeting the per-color degree bound for (n, r);
// used as test and scan input.
EmbeddingInstance random_embedding_instance(int m, int n, Count r,
                                            std::uint64_t seed);

}  // namespace hyperfact
