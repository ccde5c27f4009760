#include "hodgewalk/matroid.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "hodgewalk/error.hpp"

namespace hodgewalk {

PartitionMatroid::PartitionMatroid(std::vector<std::vector<Vertex>> blocks, std::vector<int> caps)
    : blocks_(std::move(blocks)), caps_(std::move(caps)) {
  if (blocks_.size() != caps_.size()) {
    throw Error(ErrorCode::InvalidArgument, "need one capacity per block");
  }
  std::vector<std::pair<Vertex, std::size_t>> owner;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto& blk = blocks_[b];
    std::sort(blk.begin(), blk.end());
    if (caps_[b] < 0 || caps_[b] > static_cast<int>(blk.size())) {
      throw Error(ErrorCode::InvalidArgument, "capacity of block " + std::to_string(b) + " outside [0, |B|]");
    }
    for (Vertex x : blk) owner.emplace_back(x, b);
  }
  std::sort(owner.begin(), owner.end());
  for (std::size_t i = 0; i < owner.size(); ++i) {
    if (i > 0 && owner[i].first == owner[i - 1].first) {
      throw Error(ErrorCode::InvalidArgument, "element " + std::to_string(owner[i].first) + " in two blocks");
    }
    ground_.push_back(owner[i].first);
    block_index_.push_back(owner[i].second);
  }
}

bool PartitionMatroid::contains(Vertex x) const { return std::binary_search(ground_.begin(), ground_.end(), x); }

std::size_t PartitionMatroid::block_of(Vertex x) const {
  const auto it = std::lower_bound(ground_.begin(), ground_.end(), x);
  if (it == ground_.end() || *it != x) {
    throw Error(ErrorCode::InvalidArgument, "element " + std::to_string(x) + " not in the ground set");
  }
  return block_index_[static_cast<std::size_t>(it - ground_.begin())];
}

bool PartitionMatroid::independent(std::span<const Vertex> set) const {
  std::map<std::size_t, int> used;
  for (Vertex x : set) {
    const std::size_t b = block_of(x);
    if (++used[b] > caps_[b]) return false;
  }
  return true;
}

PartitionMatroid PartitionMatroid::from_json(const nlohmann::json& j) {
  try {
    return PartitionMatroid(j.at("blocks").get<std::vector<std::vector<Vertex>>>(),
                            j.at("caps").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("matroid JSON: ") + e.what());
  }
}

nlohmann::json PartitionMatroid::to_json() const { return {{"blocks", blocks_}, {"caps", caps_}}; }

PartitionMatroid read_matroid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return PartitionMatroid::from_json(j);
}

std::optional<std::pair<Vertex, Vertex>> shared_block_pair(const PartitionMatroid& m1,
                                                           const PartitionMatroid& m2) {
  std::map<std::pair<std::size_t, std::size_t>, Vertex> seen;
  for (Vertex x : m1.ground_set()) {
    if (!m2.contains(x)) continue;
    const auto key = std::make_pair(m1.block_of(x), m2.block_of(x));
    const auto [it, fresh] = seen.emplace(key, x);
    if (!fresh) return std::make_pair(it->second, x);
  }
  return std::nullopt;
}

std::pair<PartitionMatroid, PartitionMatroid> grid_matroids(std::size_t rows, std::size_t cols) {
  std::vector<std::vector<Vertex>> r(rows);
  std::vector<std::vector<Vertex>> c(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto x = static_cast<Vertex>(i * cols + j);
      r[i].push_back(x);
      c[j].push_back(x);
    }
  }
  return {PartitionMatroid(std::move(r), std::vector<int>(rows, 1)),
          PartitionMatroid(std::move(c), std::vector<int>(cols, 1))};
}

}  // namespace hodgewalk
