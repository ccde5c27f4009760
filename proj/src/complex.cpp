#include "hodgewalk/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "hodgewalk/error.hpp"

namespace hodgewalk {

namespace {

void check_distribution(const std::vector<double>& pi, int j) {
  long double total = 0.0L;
  for (double p : pi) {
    if (!(p > 0.0)) {
      throw Error(ErrorCode::NonPositivePi, "level " + std::to_string(j) + " has a non-positive mass");
    }
    total += p;
  }
  if (std::abs(static_cast<double>(total) - 1.0) > kDistributionTolerance) {
    throw Error(ErrorCode::NonPositivePi,
                "level " + std::to_string(j) + " does not sum to one (" + std::to_string(static_cast<double>(total)) + ")");
  }
}

void combinations(int n, int k, std::vector<Vertex>& current, int start, std::vector<Face>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.emplace_back(current);
    return;
  }
  for (int v = start; v < n; ++v) {
    current.push_back(static_cast<Vertex>(v));
    combinations(n, k, current, v + 1, out);
    current.pop_back();
  }
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return std::round(result);
}

const WeightedComplex::Level& WeightedComplex::level(int j) const {
  if (!valid_level(j)) {
    throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(j) + " outside [-1, " +
                                                std::to_string(dimension_) + "]");
  }
  return levels_[static_cast<std::size_t>(j + 1)];
}

std::optional<std::size_t> WeightedComplex::index_of(const Face& face) const {
  const int j = face.dimension();
  if (!valid_level(j)) return std::nullopt;
  const auto& idx = level(j).index;
  auto it = idx.find(face);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

double WeightedComplex::pi_of(const Face& face) const {
  auto i = index_of(face);
  if (!i) throw Error(ErrorCode::FaceNotPresent, face.to_string());
  return level(face.dimension()).pi[*i];
}

std::span<const std::size_t> WeightedComplex::cofaces(int j, std::size_t i) const {
  if (j == dimension_) return {};
  return level(j).cofaces.at(i);
}

std::span<const std::size_t> WeightedComplex::boundary(int j, std::size_t i) const {
  if (j == -1) return {};
  return level(j).boundary.at(i);
}

WeightedComplex WeightedComplex::from_levels(std::vector<std::vector<Face>> faces,
                                             std::vector<std::vector<double>> pi) {
  if (faces.empty() || faces.size() != pi.size()) {
    throw Error(ErrorCode::InvalidArgument, "level count mismatch");
  }
  WeightedComplex out;
  out.dimension_ = static_cast<int>(faces.size()) - 2;
  out.levels_.resize(faces.size());
  for (std::size_t l = 0; l < faces.size(); ++l) {
    Level& lv = out.levels_[l];
    if (faces[l].size() != pi[l].size()) {
      throw Error(ErrorCode::InvalidArgument, "face/mass count mismatch");
    }
    lv.faces = std::move(faces[l]);
    lv.pi = std::move(pi[l]);
    check_distribution(lv.pi, static_cast<int>(l) - 1);
    lv.index.reserve(lv.faces.size());
    for (std::size_t i = 0; i < lv.faces.size(); ++i) {
      if (static_cast<int>(lv.faces[i].size()) != static_cast<int>(l)) {
        throw Error(ErrorCode::InvalidArgument, "face " + lv.faces[i].to_string() + " on wrong level");
      }
      lv.index.emplace(lv.faces[i], i);
    }
    lv.cofaces.assign(lv.faces.size(), {});
  }
  for (std::size_t l = 1; l < out.levels_.size(); ++l) {
    Level& upper = out.levels_[l];
    Level& lower = out.levels_[l - 1];
    upper.boundary.resize(upper.faces.size());
    for (std::size_t i = 0; i < upper.faces.size(); ++i) {
      const Face& beta = upper.faces[i];
      auto& bd = upper.boundary[i];
      bd.reserve(beta.size());
      for (std::size_t p = 0; p < beta.size(); ++p) {
        auto it = lower.index.find(beta.without_index(p));
        if (it == lower.index.end()) {
          throw Error(ErrorCode::InvalidArgument, "not downward closed at " + beta.to_string());
        }
        bd.push_back(it->second);
        lower.cofaces[it->second].push_back(i);
      }
    }
  }
  // Purity: only top faces may lack cofaces.
  for (int j = -1; j < out.dimension_; ++j) {
    const Level& lv = out.levels_[static_cast<std::size_t>(j + 1)];
    for (std::size_t i = 0; i < lv.faces.size(); ++i) {
      if (lv.cofaces[i].empty()) {
        throw Error(ErrorCode::NonPure, "maximal face " + lv.faces[i].to_string() + " below top dimension");
      }
    }
  }
  return out;
}

WeightedComplex build_complex(std::span<const Face> maximal_faces, std::span<const double> weights) {
  if (maximal_faces.empty()) throw Error(ErrorCode::EmptyInput, "no facets");
  if (weights.size() != maximal_faces.size()) {
    throw Error(ErrorCode::InvalidArgument, "facet and weight counts differ");
  }
  const int d = maximal_faces.front().dimension();
  if (d < 0) throw Error(ErrorCode::EmptyInput, "the empty face is not a facet");
  for (const Face& f : maximal_faces) {
    if (f.dimension() != d) {
      throw Error(ErrorCode::NonPure, "facet " + f.to_string() + " has dimension " +
                                          std::to_string(f.dimension()) + ", expected " +
                                          std::to_string(d));
    }
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::NonPositiveWeight, std::to_string(w));
    total += w;
  }

  std::vector<std::size_t> order(maximal_faces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return maximal_faces[a] < maximal_faces[b]; });

  std::vector<std::vector<Face>> faces(static_cast<std::size_t>(d + 2));
  std::vector<std::vector<double>> pi(static_cast<std::size_t>(d + 2));
  auto& top = faces.back();
  auto& top_pi = pi.back();
  for (std::size_t n = 0; n < order.size(); ++n) {
    const Face& f = maximal_faces[order[n]];
    if (!top.empty() && top.back() == f) throw Error(ErrorCode::DuplicateFacet, f.to_string());
    top.push_back(f);
    top_pi.push_back(weights[order[n]] / total);
  }

  // Pi_j(alpha) = 1/(j+2) * sum over cofaces beta of Pi_{j+1}(beta).
  for (int j = d - 1; j >= -1; --j) {
    const auto& upper = faces[static_cast<std::size_t>(j + 2)];
    const auto& upper_pi = pi[static_cast<std::size_t>(j + 2)];
    std::unordered_map<Face, double, FaceHash> mass;
    for (std::size_t i = 0; i < upper.size(); ++i) {
      for (std::size_t p = 0; p < upper[i].size(); ++p) {
        mass[upper[i].without_index(p)] += upper_pi[i] / (j + 2);
      }
    }
    auto& level_faces = faces[static_cast<std::size_t>(j + 1)];
    level_faces.reserve(mass.size());
    for (const auto& [face, m] : mass) level_faces.push_back(face);
    std::sort(level_faces.begin(), level_faces.end());
    auto& level_pi = pi[static_cast<std::size_t>(j + 1)];
    level_pi.reserve(level_faces.size());
    for (const Face& f : level_faces) level_pi.push_back(mass.at(f));
  }
  pi.front().front() = 1.0;  // exact, rather than the rounded sum of Pi_0
  return WeightedComplex::from_levels(std::move(faces), std::move(pi));
}

WeightedComplex build_complex(std::span<const Face> maximal_faces) {
  std::vector<double> weights(maximal_faces.size(), 1.0);
  return build_complex(maximal_faces, weights);
}

WeightedComplex link(const WeightedComplex& complex, const Face& alpha) {
  auto alpha_index = complex.index_of(alpha);
  if (!alpha_index) throw Error(ErrorCode::FaceNotPresent, alpha.to_string());
  const int j = alpha.dimension();
  const int d = complex.dimension();
  if (j > d - 1) {
    throw Error(ErrorCode::DimensionTooHigh, "link of a top face " + alpha.to_string());
  }
  const double base = complex.pi(j)[*alpha_index];
  const std::size_t a = alpha.size();

  std::vector<std::vector<Face>> faces;
  std::vector<std::vector<double>> pi;
  std::vector<std::size_t> frontier{*alpha_index};
  for (int level = j; level <= d; ++level) {
    const auto& level_pi = complex.pi(level);
    std::vector<std::pair<Face, double>> entries;
    entries.reserve(frontier.size());
    const double scale = binomial(level + 1, static_cast<int>(a)) * base;
    for (std::size_t i : frontier) {
      entries.emplace_back(complex.face(level, i).minus(alpha), level_pi[i] / scale);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Face> lf;
    std::vector<double> lp;
    for (auto& [f, p] : entries) {
      lf.push_back(std::move(f));
      lp.push_back(p);
    }
    faces.push_back(std::move(lf));
    pi.push_back(std::move(lp));

    if (level == d) break;
    std::set<std::size_t> next;
    for (std::size_t i : frontier) {
      for (std::size_t c : complex.cofaces(level, i)) next.insert(c);
    }
    frontier.assign(next.begin(), next.end());
  }
  return WeightedComplex::from_levels(std::move(faces), std::move(pi));
}

LinkGraph link_graph(const WeightedComplex& complex, const Face& alpha) {
  auto alpha_index = complex.index_of(alpha);
  if (!alpha_index) throw Error(ErrorCode::FaceNotPresent, alpha.to_string());
  const int j = alpha.dimension();
  if (j > complex.dimension() - 2) {
    throw Error(ErrorCode::DimensionTooHigh,
                "link of " + alpha.to_string() + " has no edges in dimension " +
                    std::to_string(complex.dimension()));
  }
  const double base = complex.pi(j)[*alpha_index];

  LinkGraph g;
  g.alpha = alpha;
  auto vertex_faces = complex.cofaces(j, *alpha_index);
  // Cofaces are in lexicographic order, but the extending vertex need not be.
  std::vector<std::pair<Vertex, double>> verts;
  std::set<std::size_t> edge_faces;
  for (std::size_t b : vertex_faces) {
    const Face& beta = complex.face(j + 1, b);
    verts.emplace_back(beta.minus(alpha)[0], complex.pi(j + 1)[b] / ((j + 2) * base));
    for (std::size_t c : complex.cofaces(j + 1, b)) edge_faces.insert(c);
  }
  std::sort(verts.begin(), verts.end());
  g.vertices.reserve(verts.size());
  g.pi0.resize(static_cast<Eigen::Index>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) {
    g.vertices.push_back(verts[i].first);
    g.pi0(static_cast<Eigen::Index>(i)) = verts[i].second;
  }
  auto position = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(g.vertices.begin(), g.vertices.end(), v) -
                                    g.vertices.begin());
  };
  const double edge_scale = binomial(j + 3, j + 1) * base;
  const auto n = static_cast<Eigen::Index>(g.vertices.size());
  g.walk = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t c : edge_faces) {
    const Face tau = complex.face(j + 2, c).minus(alpha);
    const std::size_t x = position(tau[0]);
    const std::size_t y = position(tau[1]);
    const double w = complex.pi(j + 2)[c] / edge_scale;
    g.edges.emplace_back(x, y);
    g.edge_weights.push_back(w);
    const auto xi = static_cast<Eigen::Index>(x);
    const auto yi = static_cast<Eigen::Index>(y);
    g.walk(xi, yi) = w / (2.0 * g.pi0(xi));
    g.walk(yi, xi) = w / (2.0 * g.pi0(yi));
  }
  return g;
}

Eigen::MatrixXd LinkGraph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto x = static_cast<Eigen::Index>(edges[e].first);
    const auto y = static_cast<Eigen::Index>(edges[e].second);
    a(x, y) = a(y, x) = edge_weights[e];
  }
  return a;
}

Eigen::MatrixXd LinkGraph::projector() const {
  return Eigen::VectorXd::Ones(pi0.size()) * pi0.transpose();
}

namespace {

std::vector<int> bfs_distances(const std::vector<std::vector<std::size_t>>& adj, std::size_t source) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<std::size_t> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

std::vector<std::vector<std::size_t>> adjacency_lists(const LinkGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.order());
  for (const auto& [x, y] : g.edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  return adj;
}

}  // namespace

bool LinkGraph::connected() const {
  if (order() <= 1) return true;
  const auto dist = bfs_distances(adjacency_lists(*this), 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

int LinkGraph::diameter() const {
  const auto adj = adjacency_lists(*this);
  int diam = 0;
  for (std::size_t s = 0; s < order(); ++s) {
    for (int d : bfs_distances(adj, s)) {
      if (d < 0) return -1;
      diam = std::max(diam, d);
    }
  }
  return diam;
}

WeightedComplex complete_complex(int n, int d) {
  if (d < 0 || n < d + 1) throw Error(ErrorCode::InvalidArgument, "complete complex needs n >= d + 1");
  std::vector<Face> facets;
  std::vector<Vertex> scratch;
  combinations(n, d + 1, scratch, 0, facets);
  return build_complex(facets);
}

}  // namespace hodgewalk
