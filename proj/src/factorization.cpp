#include "hyperfact/factorization.hpp"

#include <stdexcept>
#include <string>

#include "hyperfact/rng.hpp"

namespace hyperfact {

bool factorization_exists(int m, Count r) {
  if (m < 3 || r < 1) return false;
  return (r * m) % 3 == 0 && binom(m - 1, 2) % r == 0;
}

Hypergraph generate_r_factorization(int m, Count r, std::uint64_t seed,
                                    const DetachOptions& options) {
  if (!factorization_exists(m, r))
    throw std::invalid_argument(
        "no r-factorization: need 3 | rm and r | C(m-1,2), got m=" +
        std::to_string(m) + " r=" + std::to_string(r));
  const Count k = binom(m - 1, 2) / r;
  const Count per_class = r * m / 3;
  HypergraphBuilder b;
  b.add_vertex(0);
  for (ColorId j = 1; j <= k; ++j)
    b.add_edge(HyperedgeKey::of({0, 0, 0}), j, per_class);
  Hypergraph amalgam = std::move(b).build();
  NumberFunction g;
  g.g[0] = m;
  return detach(amalgam, g, mix_seed(seed, 0xFAC7), options).detached;
}

}  // namespace hyperfact
