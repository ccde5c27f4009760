#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/face.hpp"

namespace hodgewalk {

/// Absolute tolerance used for distribution identities at build scale.
inline constexpr double kDistributionTolerance = 1e-12;

/**
 * A pure weighted simplicial complex (X, Pi).
 *
 * Levels are addressed by face dimension j in [-1, d]. Each level keeps its
 * faces in lexicographic order together with the marginal distribution Pi_j,
 * a hash index, and the incidence lists to the neighbouring levels. Instances
 * are immutable once built and safe to share between readers.
 */
class WeightedComplex {
 public:
  int dimension() const noexcept { return dimension_; }

  std::span<const Face> faces(int j) const { return level(j).faces; }
  std::span<const double> pi(int j) const { return level(j).pi; }
  std::size_t size(int j) const { return level(j).faces.size(); }
  const Face& face(int j, std::size_t i) const { return level(j).faces.at(i); }

  std::optional<std::size_t> index_of(const Face& face) const;
  bool contains(const Face& face) const { return index_of(face).has_value(); }
  /// Pi_{dim(face)}(face); throws FaceNotPresent.
  double pi_of(const Face& face) const;

  /// Indices into level j+1 of the faces containing face i of level j.
  std::span<const std::size_t> cofaces(int j, std::size_t i) const;
  /// Indices into level j-1 of face i with its p-th vertex dropped, in vertex order.
  std::span<const std::size_t> boundary(int j, std::size_t i) const;

  bool valid_level(int j) const noexcept { return j >= -1 && j <= dimension_; }

  /// Assembles a complex from per-level sorted faces and distributions.
  /// Levels are indexed from dimension -1; used by the builders in this module.
  static WeightedComplex from_levels(std::vector<std::vector<Face>> faces,
                                     std::vector<std::vector<double>> pi);

 private:
  struct Level {
    std::vector<Face> faces;
    std::vector<double> pi;
    std::unordered_map<Face, std::size_t, FaceHash> index;
    std::vector<std::vector<std::size_t>> cofaces;
    std::vector<std::vector<std::size_t>> boundary;
  };

  const Level& level(int j) const;

  int dimension_ = -1;
  std::vector<Level> levels_;
};

/// Builds the downward closure of `maximal_faces` with Pi_d proportional to `weights`.
WeightedComplex build_complex(std::span<const Face> maximal_faces, std::span<const double> weights);

/// Uniform-weight convenience overload.
WeightedComplex build_complex(std::span<const Face> maximal_faces);

/// The link X_alpha with its conditional distributions.
WeightedComplex link(const WeightedComplex& complex, const Face& alpha);

/// Weighted 1-skeleton of a link together with its random-walk matrix.
struct LinkGraph {
  Face alpha;
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // indices into `vertices`, first < second
  std::vector<double> edge_weights;                        // Pi_1^alpha per edge
  Eigen::VectorXd pi0;
  Eigen::MatrixXd walk;  // D^{-1} A with D(x,x) = 2 Pi_0^alpha(x)

  std::size_t order() const noexcept { return vertices.size(); }
  Eigen::MatrixXd adjacency() const;
  /// Projection onto constants, J = 1 pi0^T.
  Eigen::MatrixXd projector() const;
  bool connected() const;
  /// Unweighted graph distance diameter; -1 when disconnected.
  int diameter() const;
};

LinkGraph link_graph(const WeightedComplex& complex, const Face& alpha);

/// All complete (d+1)-subsets of {0, ..., n-1}, uniform weights.
WeightedComplex complete_complex(int n, int d);

double binomial(int n, int k);

}  // namespace hodgewalk
