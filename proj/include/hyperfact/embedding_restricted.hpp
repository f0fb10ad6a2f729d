#pragma once

#include <cstdint>
#include <vector>

#include "hyperfact/embedding.hpp"
#include "hyperfact/hypergraph.hpp"

namespace hyperfact {

// A fully colored piece system on m vertices: every triple once, every pair
// with total multiplicity n-m, every singleton with total multiplicity
// C(n-m, 2). Pairs and singletons stand for host edges with one and two
// added vertices respectively.
struct PiecesInstance {
  int m = 0;
  int n = 0;
  Count r = 0;
  Hypergraph pieces;
};

// Validates the exact piece census; throws EmbedError otherwise.
PiecesInstance make_pieces_instance(Hypergraph pieces, int n, Count r);

struct RestrictedReport {
  bool edge_divisible = false;    // 3 | r n
  bool degree_divisible = false;  // r | C(n-1, 2)
  bool colors_exact = false;      // exactly C(n-1,2)/r colors, ids 1..k
  bool degrees_exact = false;     // per-color degree exactly r everywhere
  bool fill_nonneg = false;       // pairs + 2*triples cover r(m - n/3)
  Count k = 0;
  ColorCensus census;  // zero_old holds the new-edge quotas when defined
  std::vector<std::string> notes;

  bool all_pass() const {
    return edge_divisible && degree_divisible && colors_exact &&
           degrees_exact && fill_nonneg;
  }
};

RestrictedReport check_conditions_restricted(const PiecesInstance& inst);

// Adds the amalgamated vertex u, extends every pair piece by one hinge at u
// and every singleton piece by two, and adds C(n-m, 3) uncolored {u,u,u}
// edges.
Hypergraph build_f_prime(const PiecesInstance& inst);

// Checks the conditions, colors the new edges by the census quotas and
// detaches u into n-m vertices. The result is a colored K_n^3 whose classes
// are r-factors and whose restriction counts match the pieces per color.
Hypergraph embed_restricted(const PiecesInstance& inst, std::uint64_t seed,
                            const DetachOptions& options = {});

// Random satisfiable instance: runs the unrestricted pipeline on a random
// input and reads the pieces off the staged coloring.
PiecesInstance random_pieces_instance(int m, int n, Count r,
                                      std::uint64_t seed);

}  // namespace hyperfact
