#pragma once

#include <cstdint>

#include "hyperfact/detachment.hpp"
#include "hyperfact/hypergraph.hpp"

namespace hyperfact {

// True iff K_m^3 admits an r-factorization: 3 | rm and r | C(m-1, 2).
bool factorization_exists(int m, Count r);

// Colored K_m^3 whose C(m-1,2)/r color classes are each r-factors. Built by
// coloring the triple multiplicities at a single amalgamated vertex with
// rm/3 edges per color and detaching with fiber size m.
Hypergraph generate_r_factorization(int m, Count r, std::uint64_t seed,
                                    const DetachOptions& options = {});

}  // namespace hyperfact
