#include "hodgewalk/builders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "hodgewalk/error.hpp"
#include "hodgewalk/json_text.hpp"

namespace hodgewalk {

Tally StructuralReport::tally() const {
  Tally t;
  for (const auto& a : checks) {
    switch (a.status) {
      case Status::Pass: ++t.pass; break;
      case Status::Fail: ++t.fail; break;
      case Status::Skipped: ++t.skipped; break;
    }
  }
  return t;
}

const Assertion* StructuralReport::find(const std::string& name) const {
  for (const auto& a : checks) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

nlohmann::json to_json(const StructuralReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& a : r.checks) checks.push_back(to_json(a));
  return {{"kind", r.kind}, {"k", r.k}, {"facts", r.facts}, {"checks", checks}, {"summary", to_json(r.tally())}};
}

namespace {

/// Enumerates all sets of size <= k built from `ground` under `can_add`, then
/// checks that every set of size < k extends. Returns the uniform complex on
/// the size-k sets.
template <class CanAdd>
WeightedComplex enumerate_pure(std::span<const Vertex> ground, int k, CanAdd can_add) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  std::vector<std::vector<Vertex>> current{{}};
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  for (int size = 0; size < k; ++size) {
    std::vector<std::vector<Vertex>> next;
    for (const auto& s : current) {
      bool extends = false;
      for (Vertex x : ground) {
        if (!can_add(s, x)) continue;
        extends = true;
        if (s.empty() || x > s.back()) {
          auto t = s;
          t.push_back(x);
          next.push_back(std::move(t));
        }
      }
      if (!extends) {
        std::ostringstream os;
        os << "maximal face " << Face(s) << " has size " << s.size() << " < " << k;
        throw Error(ErrorCode::NonPure, os.str());
      }
      if ((total += next.size()) > kEnumerationLimit) {
        throw Error(ErrorCode::TooLarge, "more than " + std::to_string(kEnumerationLimit) + " faces");
      }
    }
    counts.push_back(next.size());
    current = std::move(next);
  }
  std::vector<Face> top;
  top.reserve(current.size());
  for (auto& s : current) top.emplace_back(std::move(s));
  WeightedComplex x = build_complex(top);
  for (int j = 0; j < k; ++j) {
    if (x.size(j) != counts[static_cast<std::size_t>(j)]) {
      throw Error(ErrorCode::StructureMismatch, "downward closure differs from the enumeration at level " +
                                                    std::to_string(j));
    }
  }
  return x;
}

Assertion vacuous(const std::string& name) { return Assertion::skipped(name, "no faces in range"); }

Assertion end_to_end(const WeightedComplex& x, int k, bool hypothesis, const std::string& why,
                     const OperatorOptions& opts) {
  const std::string name = "end_to_end_lambda2";
  const double bound = 1.0 - 1.0 / (static_cast<double>(k) * k);
  if (!hypothesis) return Assertion::skipped(name, why, 0.0, bound);
  if (x.size(k - 1) > opts.cap) return Assertion::skipped(name, "top level exceeds the dense cap", 0.0, bound);
  const double l2 = second_eigenvalue(weighted_spectrum(down_up_walk(x, k - 1, opts)));
  return Assertion::check(name, l2, Relation::AtMost, bound);
}

double diameter_value(const LinkGraph& g) {
  const int d = g.diameter();
  return d < 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(d);
}

}  // namespace

WeightedComplex independent_set_complex(const Graph& g, int k) {
  std::vector<Vertex> ground(g.order());
  for (Vertex v = 0; v < ground.size(); ++v) ground[v] = v;
  return enumerate_pure(ground, k, [&](const std::vector<Vertex>& s, Vertex x) {
    for (Vertex u : s) {
      if (u == x || g.adjacent(u, x)) return false;
    }
    return true;
  });
}

SamplingCondition is_sampling_condition(const Graph& g, int k) {
  SamplingCondition c;
  c.delta = g.max_degree();
  c.lambda_min = g.lambda_min();
  const double denom = static_cast<double>(c.delta) + std::abs(c.lambda_min);
  c.threshold = denom > 0.0 ? static_cast<double>(g.order()) / denom : std::numeric_limits<double>::infinity();
  c.pass = static_cast<double>(k) <= c.threshold;
  return c;
}

StructuralReport is_link_checks(const WeightedComplex& x, const Graph& g, int k, OperatorOptions opts) {
  StructuralReport rep;
  rep.kind = "independent_sets";
  rep.k = k;
  const SamplingCondition cond = is_sampling_condition(g, k);
  const double n = static_cast<double>(g.order());
  const double connect_threshold = n / (static_cast<double>(cond.delta) + 1.0);
  rep.facts = {{"n", g.order()},
               {"edges", g.edge_count()},
               {"max_degree", cond.delta},
               {"lambda_min", cond.lambda_min},
               {"threshold", json_number(cond.threshold)},
               {"connectivity_threshold", connect_threshold},
               {"condition_pass", cond.pass},
               {"top_faces", x.size(k - 1)}};

  std::size_t mismatches = 0;
  double worst_diameter = 0.0;
  double worst_top = -std::numeric_limits<double>::infinity();
  Face worst_top_face;
  std::size_t lower_links = 0;
  std::size_t top_links = 0;
  for (int j = -1; j <= k - 3; ++j) {
    for (std::size_t i = 0; i < x.size(j); ++i) {
      const Face& s = x.face(j, i);
      const LinkGraph lg = link_graph(x, s);
      ++lower_links;

      std::vector<Vertex> expected;
      for (Vertex v = 0; v < g.order(); ++v) {
        bool blocked = s.contains(v);
        for (Vertex u : s) blocked = blocked || g.adjacent(u, v);
        if (!blocked) expected.push_back(v);
      }
      if (expected != lg.vertices) {
        std::vector<Vertex> diff;
        std::set_symmetric_difference(expected.begin(), expected.end(), lg.vertices.begin(), lg.vertices.end(),
                                      std::back_inserter(diff));
        mismatches += diff.size() + 1;
      } else {
        std::set<std::pair<std::size_t, std::size_t>> edges(lg.edges.begin(), lg.edges.end());
        for (std::size_t a = 0; a < lg.order(); ++a) {
          for (std::size_t b = a + 1; b < lg.order(); ++b) {
            const bool in_link = edges.count({a, b}) > 0;
            if (in_link == g.adjacent(lg.vertices[a], lg.vertices[b])) ++mismatches;
          }
        }
      }
      worst_diameter = std::max(worst_diameter, diameter_value(lg));
      if (j == k - 3) {
        ++top_links;
        const double l2 = link_lambda2(lg);
        if (l2 > worst_top) {
          worst_top = l2;
          worst_top_face = s;
        }
      }
    }
  }
  rep.facts["lower_links"] = lower_links;
  rep.facts["top_links"] = top_links;

  if (lower_links == 0) {
    rep.checks.push_back(vacuous("link_structure"));
    rep.checks.push_back(vacuous("link_diameter"));
    rep.checks.push_back(vacuous("top_link_lambda2"));
  } else {
    rep.checks.push_back(
        Assertion::check("link_structure", static_cast<double>(mismatches), Relation::AtMost, 0.0, 0.0));
    if (static_cast<double>(k) <= connect_threshold) {
      rep.checks.push_back(Assertion::check("link_diameter", worst_diameter, Relation::AtMost, 2.0, 0.0));
    } else {
      rep.checks.push_back(Assertion::skipped("link_diameter", "k > n/(max_degree+1)", worst_diameter, 2.0));
    }
    if (cond.pass) {
      Assertion a = Assertion::check("top_link_lambda2", worst_top, Relation::AtMost, 1.0 / k);
      a.note = "argmax " + worst_top_face.to_string();
      rep.checks.push_back(a);
    } else {
      rep.checks.push_back(
          Assertion::skipped("top_link_lambda2", "k > n/(max_degree+|lambda_min|)", worst_top, 1.0 / k));
    }
  }
  rep.checks.push_back(end_to_end(x, k, cond.pass, "k > n/(max_degree+|lambda_min|)", opts));
  return rep;
}

StructuralReport is_link_checks(const Graph& g, int k, OperatorOptions opts) {
  return is_link_checks(independent_set_complex(g, k), g, k, opts);
}

namespace {

void require_same_ground(const PartitionMatroid& m1, const PartitionMatroid& m2) {
  if (!std::equal(m1.ground_set().begin(), m1.ground_set().end(), m2.ground_set().begin(),
                  m2.ground_set().end())) {
    throw Error(ErrorCode::InvalidArgument, "the two matroids must share a ground set");
  }
}

}  // namespace

WeightedComplex matroid_intersection_complex(const PartitionMatroid& m1, const PartitionMatroid& m2, int k) {
  require_same_ground(m1, m2);
  return enumerate_pure(m1.ground_set(), k, [&](const std::vector<Vertex>& s, Vertex x) {
    const std::size_t b1 = m1.block_of(x);
    const std::size_t b2 = m2.block_of(x);
    int used1 = 0;
    int used2 = 0;
    for (Vertex u : s) {
      if (u == x) return false;
      used1 += m1.block_of(u) == b1;
      used2 += m2.block_of(u) == b2;
    }
    return used1 < m1.cap(b1) && used2 < m2.cap(b2);
  });
}

std::size_t max_common_independent(const PartitionMatroid& m1, const PartitionMatroid& m2) {
  require_same_ground(m1, m2);
  const auto ground = m1.ground_set();
  std::vector<int> left1(m1.block_count());
  std::vector<int> left2(m2.block_count());
  int cap1 = 0;
  int cap2 = 0;
  for (std::size_t b = 0; b < left1.size(); ++b) cap1 += left1[b] = m1.cap(b);
  for (std::size_t b = 0; b < left2.size(); ++b) cap2 += left2[b] = m2.cap(b);
  const std::size_t ceiling = static_cast<std::size_t>(std::min(cap1, cap2));
  std::vector<std::size_t> b1(ground.size());
  std::vector<std::size_t> b2(ground.size());
  for (std::size_t i = 0; i < ground.size(); ++i) {
    b1[i] = m1.block_of(ground[i]);
    b2[i] = m2.block_of(ground[i]);
  }

  std::size_t best = 0;
  auto search = [&](auto&& self, std::size_t i, std::size_t size) -> void {
    best = std::max(best, size);
    if (best == ceiling || i == ground.size() || size + (ground.size() - i) <= best) return;
    if (left1[b1[i]] > 0 && left2[b2[i]] > 0) {
      --left1[b1[i]];
      --left2[b2[i]];
      self(self, i + 1, size + 1);
      ++left1[b1[i]];
      ++left2[b2[i]];
    }
    self(self, i + 1, size);
  };
  search(search, 0, 0);
  return best;
}

namespace {

BipartiteLinkStructure build_structure(const WeightedComplex& x, const PartitionMatroid& m1,
                                       const PartitionMatroid& m2, const Face& s) {
  BipartiteLinkStructure st;
  st.base = s;
  const LinkGraph lg = link_graph(x, s);
  st.extensions = lg.vertices;

  // Elements of a block with exactly one free slot left form one class; all
  // other elements of E_S are singletons.
  auto classes = [&](const PartitionMatroid& m, std::vector<std::size_t>& out) {
    std::map<std::pair<int, std::size_t>, std::size_t> ids;
    for (Vertex e : st.extensions) {
      const std::size_t b = m.block_of(e);
      int used = 0;
      for (Vertex u : s) used += m.block_of(u) == b;
      const auto key = m.cap(b) - used == 1 ? std::make_pair(0, b) : std::make_pair(1, static_cast<std::size_t>(e));
      const auto [it, fresh] = ids.emplace(key, ids.size());
      out.push_back(it->second);
    }
    return ids.size();
  };
  st.p_count = classes(m1, st.p_class);
  st.q_count = classes(m2, st.q_class);

  const std::size_t m = st.extensions.size();
  std::set<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < m; ++i) st.simple = cells.emplace(st.p_class[i], st.q_class[i]).second && st.simple;

  std::set<std::pair<std::size_t, std::size_t>> link_edges(lg.edges.begin(), lg.edges.end());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool disjoint = st.p_class[i] != st.p_class[j] && st.q_class[i] != st.q_class[j];
      if (disjoint != (link_edges.count({i, j}) > 0)) ++st.mismatches;
    }
  }

  if (st.simple) {
    st.bipartite = Graph(st.p_count + st.q_count);
    for (std::size_t i = 0; i < m; ++i) {
      st.bipartite.add_edge(static_cast<Vertex>(st.p_class[i]), static_cast<Vertex>(st.p_count + st.q_class[i]));
    }
    st.line = line_graph(st.bipartite);
    const auto edges = st.bipartite.edges();
    for (std::size_t i = 0; i < m; ++i) {
      const std::pair<Vertex, Vertex> e{static_cast<Vertex>(st.p_class[i]),
                                        static_cast<Vertex>(st.p_count + st.q_class[i])};
      st.line_vertex.push_back(static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) -
                                                        edges.begin()));
    }
  }
  return st;
}

}  // namespace

BipartiteLinkStructure top_link_structure(const WeightedComplex& x, const PartitionMatroid& m1,
                                          const PartitionMatroid& m2, const Face& s) {
  if (!x.contains(s)) throw Error(ErrorCode::FaceNotPresent, s.to_string());
  BipartiteLinkStructure st = build_structure(x, m1, m2, s);
  if (!st.simple) {
    std::string witness = "B has parallel edges at base " + s.to_string();
    if (const auto pair = shared_block_pair(m1, m2)) {
      witness += "; elements " + std::to_string(pair->first) + " and " + std::to_string(pair->second) +
                 " share a block in both matroids";
    }
    throw Error(ErrorCode::NotSimpleB, witness);
  }
  if (st.mismatches != 0) {
    throw Error(ErrorCode::StructureMismatch,
                std::to_string(st.mismatches) + " pairs disagree with complement(L(B)) at " + s.to_string());
  }
  return st;
}

BipartiteLinkStructure top_link_structure(const PartitionMatroid& m1, const PartitionMatroid& m2, int k,
                                          const Face& s) {
  return top_link_structure(matroid_intersection_complex(m1, m2, k), m1, m2, s);
}

LineGraphCheck line_graph_min_eig_check(const Graph& b) {
  LineGraphCheck c;
  c.lambda_min = line_graph(b).lambda_min();
  c.pass = c.lambda_min >= -2.0 - kSpectralTolerance;
  return c;
}

StructuralReport mi_link_checks(const WeightedComplex& x, const PartitionMatroid& m1, const PartitionMatroid& m2,
                                int k, OperatorOptions opts) {
  StructuralReport rep;
  rep.kind = "matroid_intersection";
  rep.k = k;
  const std::size_t r = max_common_independent(m1, m2);
  const auto shared = shared_block_pair(m1, m2);
  const double rd = static_cast<double>(r);
  const bool connect_hyp = static_cast<double>(k) < rd / 2.0 - 1.0;
  const bool top_hyp = 3.0 * k <= rd && !shared;
  rep.facts = {{"elements", m1.ground_set().size()},
               {"r", r},
               {"shared_block_pair", shared ? nlohmann::json{shared->first, shared->second} : nlohmann::json(nullptr)},
               {"purity_guaranteed", 2 * k <= static_cast<int>(r)},
               {"top_faces", x.size(k - 1)}};

  std::size_t mismatches = 0;
  std::size_t non_simple = 0;
  double worst_line = std::numeric_limits<double>::infinity();
  double worst_diameter = 0.0;
  double worst_top = -std::numeric_limits<double>::infinity();
  double min_degree = std::numeric_limits<double>::infinity();
  std::size_t lower_links = 0;
  for (int j = -1; j <= k - 3; ++j) {
    for (std::size_t i = 0; i < x.size(j); ++i) {
      const Face& s = x.face(j, i);
      ++lower_links;
      const BipartiteLinkStructure st = build_structure(x, m1, m2, s);
      mismatches += st.mismatches;
      if (!st.simple) {
        ++non_simple;
      } else {
        worst_line = std::min(worst_line, st.line.lambda_min());
      }
      const LinkGraph lg = link_graph(x, s);
      worst_diameter = std::max(worst_diameter, diameter_value(lg));
      if (j == k - 3) {
        worst_top = std::max(worst_top, link_lambda2(lg));
        std::vector<std::size_t> deg(lg.order(), 0);
        for (const auto& [a, b] : lg.edges) {
          ++deg[a];
          ++deg[b];
        }
        for (std::size_t dv : deg) min_degree = std::min(min_degree, static_cast<double>(dv));
      }
    }
  }
  rep.facts["lower_links"] = lower_links;

  const double degree_bound = rd - 2.0 * k + 2.0;
  if (lower_links == 0) {
    for (const char* name : {"link_structure", "b_simple", "line_graph_lambda_min", "link_diameter",
                             "top_link_min_degree", "top_link_lambda2"}) {
      rep.checks.push_back(vacuous(name));
    }
  } else {
    rep.checks.push_back(
        Assertion::check("link_structure", static_cast<double>(mismatches), Relation::AtMost, 0.0, 0.0));
    if (shared) {
      rep.checks.push_back(Assertion::skipped("b_simple", "two elements share a block in both matroids",
                                              static_cast<double>(non_simple), 0.0));
    } else {
      rep.checks.push_back(
          Assertion::check("b_simple", static_cast<double>(non_simple), Relation::AtMost, 0.0, 0.0));
    }
    if (std::isfinite(worst_line)) {
      rep.checks.push_back(Assertion::check("line_graph_lambda_min", worst_line, Relation::AtLeast, -2.0));
    } else {
      rep.checks.push_back(Assertion::skipped("line_graph_lambda_min", "no simple B"));
    }
    if (connect_hyp) {
      rep.checks.push_back(Assertion::check("link_diameter", worst_diameter, Relation::AtMost, 2.0, 0.0));
    } else {
      rep.checks.push_back(Assertion::skipped("link_diameter", "k >= r/2 - 1", worst_diameter, 2.0));
    }
    rep.checks.push_back(
        Assertion::check("top_link_min_degree", min_degree, Relation::AtLeast, degree_bound, 0.0));
    if (top_hyp) {
      rep.checks.push_back(Assertion::check("top_link_lambda2", worst_top, Relation::AtMost, 1.0 / k));
    } else {
      rep.checks.push_back(Assertion::skipped("top_link_lambda2",
                                              shared ? "two elements share a block in both matroids" : "k > r/3",
                                              worst_top, 1.0 / k));
    }
  }
  rep.checks.push_back(
      end_to_end(x, k, top_hyp, shared ? "two elements share a block in both matroids" : "k > r/3", opts));
  return rep;
}

StructuralReport mi_link_checks(const PartitionMatroid& m1, const PartitionMatroid& m2, int k,
                                OperatorOptions opts) {
  return mi_link_checks(matroid_intersection_complex(m1, m2, k), m1, m2, k, opts);
}

}  // namespace hodgewalk
