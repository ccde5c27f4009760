#pragma once

#include <cstddef>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/graph.hpp"
#include "hodgewalk/rng.hpp"

namespace hodgewalk {

/// Pure d-dimensional complex on vertices 0..n-1 from `facets` distinct random
/// (d+1)-subsets. Weights are uniform on [min_weight, max_weight]; equal bounds
/// give the uniform complex.
WeightedComplex random_pure_complex(CounterRng& rng, int n, int d, std::size_t facets, double min_weight = 0.1,
                                    double max_weight = 5.0);

/// Erdos-Renyi graph G(n, p).
Graph random_graph(CounterRng& rng, std::size_t n, double p);

}  // namespace hodgewalk
