#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/graph.hpp"
#include "hodgewalk/matroid.hpp"
#include "hodgewalk/rng.hpp"

namespace hodgewalk {

/// Largest state space `exact_enumeration` and the exhaustive initial-state search will visit.
inline constexpr std::size_t kExactStateLimit = 1'000'000;

using State = std::vector<Vertex>;  // sorted

/// Size-k independent sets of a graph, or size-k common independent sets of
/// two partition matroids over the same ground set.
class SamplingTarget {
 public:
  enum class Kind { IndependentSets, MatroidIntersection };

  static SamplingTarget independent_sets(Graph g, int k);
  static SamplingTarget matroid_intersection(PartitionMatroid m1, PartitionMatroid m2, int k);

  Kind kind() const noexcept { return kind_; }
  int k() const noexcept { return k_; }
  /// Sorted ground set: graph vertices or matroid elements.
  std::span<const Vertex> elements() const noexcept { return elements_; }
  const Graph& graph() const noexcept { return graph_; }
  const PartitionMatroid& m1() const noexcept { return m1_; }
  const PartitionMatroid& m2() const noexcept { return m2_; }

  /// Whether `partial` plus x is still a face (x not already in `partial`).
  bool can_add(std::span<const Vertex> partial, Vertex x) const;
  /// Whether `set` is a sorted, duplicate-free face of size k.
  bool valid(std::span<const Vertex> set) const;

 private:
  Kind kind_ = Kind::IndependentSets;
  int k_ = 1;
  std::vector<Vertex> elements_;
  Graph graph_;
  PartitionMatroid m1_;
  PartitionMatroid m2_;
};

struct ChainState {
  State face;
  std::uint64_t step = 0;
  CounterRng rng;
};

/**
 * The down-up walk on size-k faces, run without materializing the operator.
 *
 * Independent-set targets keep per-vertex counts of neighbours in the current
 * set plus a swap-remove list of unblocked vertices. Matroid targets keep
 * per-block usage counters and scan the ground set.
 */
class DownUpChain {
 public:
  DownUpChain(const SamplingTarget& target, State initial, std::uint64_t seed);
  DownUpChain(const SamplingTarget& target, ChainState state);

  const ChainState& state() const noexcept { return state_; }
  const State& face() const noexcept { return state_.face; }

  /// One transition; returns (dropped, added).
  std::pair<Vertex, Vertex> step();

 private:
  void drop(std::size_t idx);
  void add(std::size_t idx);
  void candidates(std::vector<std::size_t>& out) const;
  std::size_t index_of(Vertex x) const;

  const SamplingTarget* target_;
  ChainState state_;
  std::vector<char> in_set_;
  // independent sets
  std::vector<std::uint32_t> blocked_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> free_pos_;
  // matroid intersection
  std::vector<std::size_t> block1_;
  std::vector<std::size_t> block2_;
  std::vector<int> used1_;
  std::vector<int> used2_;
  std::vector<std::size_t> scratch_;
};

/// One transition from `state`; the returned state has its step and RNG advanced.
ChainState down_up_step(const ChainState& state, const SamplingTarget& target);

/// Greedy insertion in element order, then exhaustive search. Throws NoInitialState.
State initial_state(const SamplingTarget& target);

struct SamplerConfig {
  std::uint64_t seed = 1;
  std::uint64_t burnin = 0;
  std::uint64_t samples = 0;
  std::uint64_t thin = 1;
  std::optional<State> initial;
  std::ostream* trace = nullptr;  // `<step> <v1> ... <vk>` per recorded sample
};

struct ChainTrace {
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::uint64_t recorded = 0;
  State initial;
  State final_state;
  std::map<State, std::uint64_t> visits;
};

/// Runs burnin steps, then records the state after every `thin` steps, `samples` times.
ChainTrace run_chain(const SamplingTarget& target, const SamplerConfig& config);

/// All size-k faces in lexicographic order. Throws TooLarge above kExactStateLimit.
std::vector<State> exact_enumeration(const SamplingTarget& target);

/// Half the l1 distance between empirical visit frequencies and uniform on `exact`.
double tv_distance(const std::map<State, std::uint64_t>& visits, std::span<const State> exact);
double tv_distance(const ChainTrace& trace, std::span<const State> exact);

/// Endpoint frequencies of `chains` independent runs of `steps` steps from `start`.
std::map<State, std::uint64_t> endpoint_counts(const SamplingTarget& target, const State& start,
                                               std::uint64_t steps, std::uint64_t chains, std::uint64_t seed);

/// Sampling allowance for the empirical l1 distance to `p` from `n` draws:
/// the expected l1 under exact sampling plus `sigmas` standard deviations.
double l1_sampling_slack(std::span<const double> p, std::uint64_t n, double sigmas = 3.0);

/// Transition counts of a single run, indexed by position in `exact`.
Eigen::MatrixXd transition_counts(const SamplingTarget& target, std::span<const State> exact, const State& start,
                                  std::uint64_t steps, std::uint64_t seed);

struct GoodnessOfFit {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 0.0;
  std::size_t impossible = 0;  // observed transitions with zero model probability
};

/// Pooled Pearson chi-square of row-wise transition counts against kernel `p`.
GoodnessOfFit chi_square_fit(const Eigen::MatrixXd& counts, const Eigen::MatrixXd& p);

}  // namespace hodgewalk
