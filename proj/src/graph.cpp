#include "hodgewalk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "hodgewalk/error.hpp"

namespace hodgewalk {

Graph::Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) : adj_(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= adj_.size() || v >= adj_.size()) {
    throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(u) + "-" + std::to_string(v) +
                                                " outside 0.." + std::to_string(adj_.size()));
  }
  if (u == v) throw Error(ErrorCode::InvalidArgument, "loop at " + std::to_string(u));
  if (adjacent(u, v)) {
    throw Error(ErrorCode::InvalidArgument, "repeated edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
  ++edges_;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& a = adj_.at(u);
  return std::binary_search(a.begin(), a.end(), v);
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t m = 0;
  for (const auto& a : adj_) m = std::max(m, a.size());
  return m;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Eigen::MatrixXd Graph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) a(u, v) = 1.0;
  }
  return a;
}

double Graph::lambda_min() const {
  if (edges_ == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(static_cast<Vertex>(n - 1), 0);
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Vertex i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex i = 0; i < a; ++i) {
    for (Vertex j = 0; j < b; ++j) g.add_edge(i, static_cast<Vertex>(a + j));
  }
  return g;
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
  Graph g(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto v = static_cast<Vertex>(i * cols + j);
      if (j + 1 < cols) g.add_edge(v, v + 1);
      if (i + 1 < rows) g.add_edge(v, static_cast<Vertex>(v + cols));
    }
  }
  return g;
}

Graph line_graph(const Graph& g) {
  const auto e = g.edges();
  Graph l(e.size());
  for (Vertex i = 0; i < e.size(); ++i) {
    for (Vertex j = i + 1; j < e.size(); ++j) {
      const bool share = e[i].first == e[j].first || e[i].first == e[j].second ||
                         e[i].second == e[j].first || e[i].second == e[j].second;
      if (share) l.add_edge(i, j);
    }
  }
  return l;
}

Graph complement(const Graph& g) {
  Graph c(g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (!g.adjacent(u, v)) c.add_edge(u, v);
    }
  }
  return c;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.order() + b.order());
  for (const auto& [u, v] : a.edges()) g.add_edge(u, v);
  const auto shift = static_cast<Vertex>(a.order());
  for (const auto& [u, v] : b.edges()) g.add_edge(u + shift, v + shift);
  return g;
}

Graph read_graph(std::istream& is) {
  std::optional<Graph> g;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag.front() == '#') continue;
    if (tag == "n") {
      long long n = -1;
      if (g || !(ls >> n) || n < 0) fail("bad or repeated header");
      g.emplace(static_cast<std::size_t>(n));
    } else if (tag == "e") {
      long long u = -1;
      long long v = -1;
      if (!g) fail("edge before 'n' header");
      if (!(ls >> u >> v) || u < 0 || v < 0) fail("expected 'e <u> <v>'");
      try {
        g->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
      } catch (const Error& e) {
        fail(e.what());
      }
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra && extra.front() != '#') fail("trailing token '" + extra + "'");
  }
  if (!g) throw Error(ErrorCode::ParseError, "missing 'n' header");
  return *g;
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return read_graph(in);
}

void write_graph(std::ostream& os, const Graph& g) {
  os << "n " << g.order() << '\n';
  for (const auto& [u, v] : g.edges()) os << "e " << u << ' ' << v << '\n';
}

}  // namespace hodgewalk
