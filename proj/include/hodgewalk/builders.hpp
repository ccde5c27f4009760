#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/graph.hpp"
#include "hodgewalk/matroid.hpp"
#include "hodgewalk/operators.hpp"
#include "hodgewalk/report.hpp"
#include "hodgewalk/spectral.hpp"

namespace hodgewalk {

/// Largest number of faces the level-by-level enumeration will produce.
inline constexpr std::size_t kEnumerationLimit = 2'000'000;

/// Result of a family of structural lemma checks on an application complex.
struct StructuralReport {
  std::string kind;
  int k = 0;
  nlohmann::json facts = nlohmann::json::object();
  std::vector<Assertion> checks;

  Tally tally() const;
  const Assertion* find(const std::string& name) const;
};

nlohmann::json to_json(const StructuralReport& r);

/// Independent sets of size <= k with uniform weight on the size-k sets.
/// Throws NonPure naming a maximal independent set of size < k.
WeightedComplex independent_set_complex(const Graph& g, int k);

struct SamplingCondition {
  std::size_t delta = 0;
  double lambda_min = 0.0;
  double threshold = 0.0;  // n / (delta + |lambda_min|), +inf for the edgeless graph
  bool pass = false;
};

SamplingCondition is_sampling_condition(const Graph& g, int k);

/// Link structure, link diameters, top-link eigenvalues and the end-to-end bound.
StructuralReport is_link_checks(const Graph& g, int k, OperatorOptions opts = {});
StructuralReport is_link_checks(const WeightedComplex& x, const Graph& g, int k, OperatorOptions opts = {});

/// Common independent sets of size <= k with uniform weight on the size-k sets.
WeightedComplex matroid_intersection_complex(const PartitionMatroid& m1, const PartitionMatroid& m2, int k);

/// Size of a largest common independent set, by exhaustive search.
std::size_t max_common_independent(const PartitionMatroid& m1, const PartitionMatroid& m2);

struct BipartiteLinkStructure {
  Face base;
  std::vector<Vertex> extensions;  // E_S, sorted
  std::vector<std::size_t> p_class;  // per extension, index into P
  std::vector<std::size_t> q_class;  // per extension, index into Q
  std::size_t p_count = 0;
  std::size_t q_count = 0;
  bool simple = true;
  Graph bipartite;  // vertices P then Q; only built when simple
  Graph line;       // L(B); vertex i is bipartite.edges()[i]
  std::vector<std::size_t> line_vertex;  // per extension, its vertex in `line`
  std::size_t mismatches = 0;            // pairs where H_S and complement(L(B)) disagree
};

/// Throws NotSimpleB if B has parallel edges and StructureMismatch if H_S != complement(L(B)).
BipartiteLinkStructure top_link_structure(const WeightedComplex& x, const PartitionMatroid& m1,
                                          const PartitionMatroid& m2, const Face& s);
BipartiteLinkStructure top_link_structure(const PartitionMatroid& m1, const PartitionMatroid& m2, int k,
                                          const Face& s);

struct LineGraphCheck {
  double lambda_min = 0.0;
  bool pass = false;
};

LineGraphCheck line_graph_min_eig_check(const Graph& b);

StructuralReport mi_link_checks(const PartitionMatroid& m1, const PartitionMatroid& m2, int k,
                                OperatorOptions opts = {});
StructuralReport mi_link_checks(const WeightedComplex& x, const PartitionMatroid& m1, const PartitionMatroid& m2,
                                int k, OperatorOptions opts = {});

}  // namespace hodgewalk
