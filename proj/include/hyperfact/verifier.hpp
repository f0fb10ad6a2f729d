#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperfact/detachment.hpp"
#include "hyperfact/hypergraph.hpp"

namespace hyperfact {

enum class EmbeddingMode { full, restricted };

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

// Machine-checkable verification record. Every bound is recomputed from
// first principles; constructor-side censuses are never trusted.
struct Certificate {
  std::string kind;
  std::vector<Check> checks;
  bool overall = false;

  const Check* find(const std::string& name) const;
};

nlohmann::json certificate_to_json(const Certificate& cert);

// Checks that g is a complete colored triple system whose color classes are
// all spanning and r-regular and partition the edge set.
Certificate verify_factorization(const Hypergraph& g, Count r);

// Factorization checks plus color preservation: in full mode the triples of
// the original keep their colors; in restricted mode the per-color counts of
// host edges with one and two added vertices match the pair and singleton
// pieces. When r is not given it is inferred from the result and then
// checked globally.
Certificate verify_embedding(const Hypergraph& original, const Hypergraph& g,
                             EmbeddingMode mode,
                             std::optional<Count> r = std::nullopt);

// Round-trip equality, 3-uniformity, and fair-share interval membership of
// every per-color fiber degree and every guarded triple multiplicity.
Certificate verify_detachment(const Hypergraph& f,
                              const DetachmentResult& result,
                              const NumberFunction& g);

}  // namespace hyperfact
