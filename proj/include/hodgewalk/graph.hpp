#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/face.hpp"

namespace hodgewalk {

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}
  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

  /// Throws InvalidArgument for loops, repeated edges and out-of-range ends.
  void add_edge(Vertex u, Vertex v);

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  bool adjacent(Vertex u, Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
  std::size_t max_degree() const noexcept;

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;
  Eigen::MatrixXd adjacency() const;
  /// Smallest adjacency eigenvalue; 0 for the edgeless graph.
  double lambda_min() const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edges_ = 0;
};

Graph empty_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// Centre 0 joined to leaves 1..leaves.
Graph star_graph(std::size_t leaves);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
/// r x c grid, vertex (i, j) numbered i*c + j.
Graph grid_graph(std::size_t rows, std::size_t cols);
/// Line graph; vertex i is the i-th entry of `g.edges()`.
Graph line_graph(const Graph& g);
Graph complement(const Graph& g);
/// Disjoint union, vertices of `b` shifted by a.order().
Graph disjoint_union(const Graph& a, const Graph& b);

/// Graph text format: header `n <count>`, then `e <u> <v>` lines; '#' comments.
Graph read_graph(std::istream& is);
Graph read_graph(const std::filesystem::path& path);
void write_graph(std::ostream& os, const Graph& g);

}  // namespace hodgewalk
