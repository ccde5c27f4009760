#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hodgewalk/face.hpp"

namespace hodgewalk {

/// Partition matroid: a set is independent iff it uses at most caps[i] elements of block i.
class PartitionMatroid {
 public:
  PartitionMatroid() = default;
  /// Throws InvalidArgument for overlapping blocks or capacities outside [0, |block|].
  PartitionMatroid(std::vector<std::vector<Vertex>> blocks, std::vector<int> caps);

  std::span<const Vertex> ground_set() const noexcept { return ground_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::span<const Vertex> block(std::size_t b) const { return blocks_.at(b); }
  int cap(std::size_t b) const { return caps_.at(b); }
  bool contains(Vertex x) const;
  /// Index of the block containing x; throws InvalidArgument if x is not in E.
  std::size_t block_of(Vertex x) const;
  bool independent(std::span<const Vertex> set) const;

  static PartitionMatroid from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  std::vector<std::vector<Vertex>> blocks_;
  std::vector<int> caps_;
  std::vector<Vertex> ground_;
  std::vector<std::size_t> block_index_;  // parallel to ground_
};

PartitionMatroid read_matroid(const std::filesystem::path& path);

/// Two elements lying in a common block of both matroids, if any.
std::optional<std::pair<Vertex, Vertex>> shared_block_pair(const PartitionMatroid& m1,
                                                           const PartitionMatroid& m2);

/// Row and column matroids of an r x c grid, cell (i, j) numbered i*c + j, capacity 1.
std::pair<PartitionMatroid, PartitionMatroid> grid_matroids(std::size_t rows, std::size_t cols);

}  // namespace hodgewalk
