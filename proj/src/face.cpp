#include "hodgewalk/face.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "hodgewalk/error.hpp"

namespace hodgewalk {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPure: return "NonPure";
    case ErrorCode::DuplicateFacet: return "DuplicateFacet";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::FaceNotPresent: return "FaceNotPresent";
    case ErrorCode::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NonPositivePi: return "NonPositivePi";
    case ErrorCode::GapZero: return "GapZero";
    case ErrorCode::DenominatorNonpositive: return "DenominatorNonpositive";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::NotSimpleB: return "NotSimpleB";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoInitialState: return "NoInitialState";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NoBudget: return "NoBudget";
  }
  return "Unknown";
}

Face::Face(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw Error(ErrorCode::InvalidArgument, "face has a repeated vertex");
  }
}

Face::Face(std::initializer_list<Vertex> vertices) : Face(std::vector<Vertex>(vertices)) {}

bool Face::contains(Vertex v) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Face::contains(const Face& other) const noexcept {
  return std::includes(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                       other.vertices_.end());
}

Face Face::without_index(std::size_t position) const {
  std::vector<Vertex> out;
  out.reserve(vertices_.size() - 1);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i != position) out.push_back(vertices_[i]);
  }
  return Face(Sorted{}, std::move(out));
}

Face Face::without(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(vertices_.size());
  std::copy_if(vertices_.begin(), vertices_.end(), std::back_inserter(out),
               [v](Vertex u) { return u != v; });
  return Face(Sorted{}, std::move(out));
}

Face Face::with(Vertex v) const {
  if (contains(v)) throw Error(ErrorCode::InvalidArgument, "vertex already in face");
  std::vector<Vertex> out = vertices_;
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return Face(Sorted{}, std::move(out));
}

Face Face::united(const Face& other) const {
  std::vector<Vertex> out;
  out.reserve(vertices_.size() + other.size());
  std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                 other.vertices_.end(), std::back_inserter(out));
  return Face(Sorted{}, std::move(out));
}

Face Face::minus(const Face& other) const {
  std::vector<Vertex> out;
  std::set_difference(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                      other.vertices_.end(), std::back_inserter(out));
  return Face(Sorted{}, std::move(out));
}

std::string Face::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Face& face) {
  os << '{';
  for (std::size_t i = 0; i < face.size(); ++i) {
    if (i) os << ',';
    os << face[i];
  }
  return os << '}';
}

std::size_t FaceHash::operator()(const Face& face) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Vertex v : face) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace hodgewalk
