#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfact/hypergraph.hpp"

namespace hyperfact {

struct PreconditionReport {
  std::vector<std::string> violations;
  bool eligible() const { return violations.empty(); }
};

// Structural requirements for a 3-uniform detachment to exist: g total and
// positive, every edge carrying exactly three hinges, no m(x^3) mass when
// g(x) <= 2 and no m(x^2, y) mass when g(x) = 1.
PreconditionReport check_preconditions(const Hypergraph& f,
                                       const NumberFunction& g);

struct DetachmentResult {
  Hypergraph detached;
  AmalgamationMap psi;  // detached vertex -> input vertex
  std::uint64_t seed = 0;
};

struct DetachOptions {
  // Reseeded re-solves granted to an earlier split when a later one has no
  // fair assignment, before climbing another level.
  int attempts_per_level = 32;
};

// Raised when the split search runs out of retries. Existence is guaranteed
// for eligible inputs, so this signals a bug or a bypassed precondition; the
// partial state is attached for inspection.
class SearchExhausted : public std::runtime_error {
 public:
  SearchExhausted(const std::string& what, Hypergraph partial,
                  AmalgamationMap partial_psi)
      : std::runtime_error(what),
        partial_(std::move(partial)),
        partial_psi_(std::move(partial_psi)) {}

  const Hypergraph& partial() const { return partial_; }
  const AmalgamationMap& partial_psi() const { return partial_psi_; }

 private:
  Hypergraph partial_;
  AmalgamationMap partial_psi_;
};

// Splits every vertex x of f into g(x) vertices so that the result is
// 3-uniform, amalgamates back to f, and shares every per-color degree and
// every triple multiplicity fairly (within floor/ceil of the uniform share).
// Deterministic for fixed (f, g, seed). Requires every edge colored and
// check_preconditions to pass.
DetachmentResult detach(const Hypergraph& f, const NumberFunction& g,
                        std::uint64_t seed, const DetachOptions& options = {});

struct SplitOutcome {
  Hypergraph result;
  AmalgamationMap psi;  // result vertex -> input vertex
  VertexId new_vertex = -1;
};

// One detachment step: splits a new vertex off x carrying a 1/g_x share of
// every quantity at x. Exposed for tests; detach() applies this repeatedly.
SplitOutcome split_one(const Hypergraph& f, VertexId x, int g_x,
                       std::uint64_t seed);

}  // namespace hyperfact
