#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hodgewalk {

/// Opaque non-negative vertex identifier.
using Vertex = std::uint32_t;

/// A simplex: strictly increasing list of vertices. The empty face has dimension -1.
class Face {
 public:
  Face() = default;

  /// Sorts the input; throws InvalidArgument on repeated vertices.
  explicit Face(std::vector<Vertex> vertices);
  Face(std::initializer_list<Vertex> vertices);

  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  bool empty() const noexcept { return vertices_.empty(); }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  auto begin() const noexcept { return vertices_.begin(); }
  auto end() const noexcept { return vertices_.end(); }

  bool contains(Vertex v) const noexcept;
  /// True when every vertex of `other` is in this face.
  bool contains(const Face& other) const noexcept;

  /// This face with the vertex at `position` removed.
  Face without_index(std::size_t position) const;
  Face without(Vertex v) const;
  Face with(Vertex v) const;
  Face united(const Face& other) const;
  /// Vertices of this face that are not in `other`.
  Face minus(const Face& other) const;

  std::string to_string() const;

  friend auto operator<=>(const Face&, const Face&) = default;
  friend bool operator==(const Face&, const Face&) = default;

 private:
  struct Sorted {};
  Face(Sorted, std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {}

  std::vector<Vertex> vertices_;
};

std::ostream& operator<<(std::ostream& os, const Face& face);

struct FaceHash {
  std::size_t operator()(const Face& face) const noexcept;
};

}  // namespace hodgewalk
