#include "hodgewalk/generators.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "hodgewalk/error.hpp"

namespace hodgewalk {

WeightedComplex random_pure_complex(CounterRng& rng, int n, int d, std::size_t facets, double min_weight,
                                    double max_weight) {
  if (d < 0 || n < d + 1) throw Error(ErrorCode::InvalidArgument, "need n >= d+1 >= 1");
  const double possible = binomial(n, d + 1);
  facets = std::min<std::size_t>(facets, static_cast<std::size_t>(possible));
  if (facets == 0) throw Error(ErrorCode::InvalidArgument, "need at least one facet");

  std::set<Face> chosen;
  std::vector<Vertex> pool(static_cast<std::size_t>(n));
  while (chosen.size() < facets) {
    for (Vertex v = 0; v < pool.size(); ++v) pool[v] = v;
    // Partial Fisher-Yates for a uniform (d+1)-subset.
    for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
      const std::size_t j = i + rng.uniform_index(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    chosen.insert(Face(std::vector<Vertex>(pool.begin(), pool.begin() + d + 1)));
  }
  std::vector<Face> faces(chosen.begin(), chosen.end());
  std::vector<double> weights(faces.size());
  for (double& w : weights) w = min_weight + (max_weight - min_weight) * rng.uniform01();
  return build_complex(faces, weights);
}

Graph random_graph(CounterRng& rng, std::size_t n, double p) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace hodgewalk
