#include "hodgewalk/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/math/distributions/chi_squared.hpp>

#include "hodgewalk/error.hpp"

namespace hodgewalk {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

SamplingTarget SamplingTarget::independent_sets(Graph g, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  SamplingTarget t;
  t.kind_ = Kind::IndependentSets;
  t.k_ = k;
  t.elements_.resize(g.order());
  for (Vertex v = 0; v < g.order(); ++v) t.elements_[v] = v;
  t.graph_ = std::move(g);
  return t;
}

SamplingTarget SamplingTarget::matroid_intersection(PartitionMatroid m1, PartitionMatroid m2, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (!std::equal(m1.ground_set().begin(), m1.ground_set().end(), m2.ground_set().begin(),
                  m2.ground_set().end())) {
    throw Error(ErrorCode::InvalidArgument, "the two matroids must share a ground set");
  }
  SamplingTarget t;
  t.kind_ = Kind::MatroidIntersection;
  t.k_ = k;
  t.elements_.assign(m1.ground_set().begin(), m1.ground_set().end());
  t.m1_ = std::move(m1);
  t.m2_ = std::move(m2);
  return t;
}

bool SamplingTarget::can_add(std::span<const Vertex> partial, Vertex x) const {
  if (!std::binary_search(elements_.begin(), elements_.end(), x)) return false;
  if (kind_ == Kind::IndependentSets) {
    for (Vertex u : partial) {
      if (u == x || graph_.adjacent(u, x)) return false;
    }
    return true;
  }
  const std::size_t b1 = m1_.block_of(x);
  const std::size_t b2 = m2_.block_of(x);
  int used1 = 0;
  int used2 = 0;
  for (Vertex u : partial) {
    if (u == x) return false;
    used1 += m1_.block_of(u) == b1;
    used2 += m2_.block_of(u) == b2;
  }
  return used1 < m1_.cap(b1) && used2 < m2_.cap(b2);
}

bool SamplingTarget::valid(std::span<const Vertex> set) const {
  if (set.size() != static_cast<std::size_t>(k_)) return false;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0 && set[i] <= set[i - 1]) return false;
    if (!can_add(set.first(i), set[i])) return false;
  }
  return true;
}

DownUpChain::DownUpChain(const SamplingTarget& target, State initial, std::uint64_t seed)
    : DownUpChain(target, ChainState{std::move(initial), 0, CounterRng(seed)}) {}

DownUpChain::DownUpChain(const SamplingTarget& target, ChainState state)
    : target_(&target), state_(std::move(state)) {
  if (!target.valid(state_.face)) {
    throw Error(ErrorCode::InvalidArgument, "initial state is not a face of size k");
  }
  const auto elems = target.elements();
  const std::size_t m = elems.size();
  in_set_.assign(m, 0);
  for (Vertex x : state_.face) in_set_[index_of(x)] = 1;

  if (target.kind() == SamplingTarget::Kind::IndependentSets) {
    const Graph& g = target.graph();
    blocked_.assign(m, 0);
    for (Vertex x : state_.face) {
      for (Vertex w : g.neighbors(x)) ++blocked_[w];
    }
    free_pos_.assign(m, kNone);
    for (std::size_t v = 0; v < m; ++v) {
      if (!in_set_[v] && blocked_[v] == 0) {
        free_pos_[v] = free_.size();
        free_.push_back(v);
      }
    }
  } else {
    const auto& m1 = target.m1();
    const auto& m2 = target.m2();
    used1_.assign(m1.block_count(), 0);
    used2_.assign(m2.block_count(), 0);
    for (Vertex x : elems) {
      block1_.push_back(m1.block_of(x));
      block2_.push_back(m2.block_of(x));
    }
    for (Vertex x : state_.face) {
      const std::size_t i = index_of(x);
      ++used1_[block1_[i]];
      ++used2_[block2_[i]];
    }
  }
}

std::size_t DownUpChain::index_of(Vertex x) const {
  const auto elems = target_->elements();
  return static_cast<std::size_t>(std::lower_bound(elems.begin(), elems.end(), x) - elems.begin());
}

void DownUpChain::drop(std::size_t idx) {
  in_set_[idx] = 0;
  if (target_->kind() == SamplingTarget::Kind::IndependentSets) {
    auto make_free = [&](std::size_t v) {
      free_pos_[v] = free_.size();
      free_.push_back(v);
    };
    for (Vertex w : target_->graph().neighbors(static_cast<Vertex>(idx))) {
      if (--blocked_[w] == 0 && !in_set_[w]) make_free(w);
    }
    make_free(idx);
  } else {
    --used1_[block1_[idx]];
    --used2_[block2_[idx]];
  }
}

void DownUpChain::add(std::size_t idx) {
  in_set_[idx] = 1;
  if (target_->kind() == SamplingTarget::Kind::IndependentSets) {
    auto unfree = [&](std::size_t v) {
      const std::size_t pos = free_pos_[v];
      free_[pos] = free_.back();
      free_pos_[free_[pos]] = pos;
      free_.pop_back();
      free_pos_[v] = kNone;
    };
    unfree(idx);
    for (Vertex w : target_->graph().neighbors(static_cast<Vertex>(idx))) {
      if (blocked_[w]++ == 0 && !in_set_[w]) unfree(w);
    }
  } else {
    ++used1_[block1_[idx]];
    ++used2_[block2_[idx]];
  }
}

void DownUpChain::candidates(std::vector<std::size_t>& out) const {
  out.clear();
  const auto& m1 = target_->m1();
  const auto& m2 = target_->m2();
  for (std::size_t i = 0; i < in_set_.size(); ++i) {
    if (!in_set_[i] && used1_[block1_[i]] < m1.cap(block1_[i]) && used2_[block2_[i]] < m2.cap(block2_[i])) {
      out.push_back(i);
    }
  }
}

std::pair<Vertex, Vertex> DownUpChain::step() {
  auto& face = state_.face;
  const std::size_t pos = state_.rng.uniform_index(face.size());
  const Vertex dropped = face[pos];
  drop(index_of(dropped));

  std::size_t chosen = 0;
  if (target_->kind() == SamplingTarget::Kind::IndependentSets) {
    chosen = free_[state_.rng.uniform_index(free_.size())];
  } else {
    candidates(scratch_);
    chosen = scratch_[state_.rng.uniform_index(scratch_.size())];
  }
  add(chosen);
  const Vertex added = target_->elements()[chosen];
  face[pos] = added;
  std::sort(face.begin(), face.end());
  ++state_.step;
  return {dropped, added};
}

ChainState down_up_step(const ChainState& state, const SamplingTarget& target) {
  DownUpChain chain(target, state);
  chain.step();
  return chain.state();
}

State initial_state(const SamplingTarget& target) {
  const auto k = static_cast<std::size_t>(target.k());
  State s;
  for (Vertex x : target.elements()) {
    if (s.size() == k) break;
    if (target.can_add(s, x)) s.push_back(x);
  }
  if (s.size() == k) return s;

  const auto elems = target.elements();
  std::size_t visited = 0;
  s.clear();
  auto search = [&](auto&& self, std::size_t from) -> bool {
    if (s.size() == k) return true;
    if (++visited > kExactStateLimit) {
      throw Error(ErrorCode::NoInitialState, "search budget exhausted without a face of size " + std::to_string(k));
    }
    for (std::size_t i = from; i + (k - s.size()) <= elems.size(); ++i) {
      if (!target.can_add(s, elems[i])) continue;
      s.push_back(elems[i]);
      if (self(self, i + 1)) return true;
      s.pop_back();
    }
    return false;
  };
  if (!search(search, 0)) {
    throw Error(ErrorCode::NoInitialState, "no face of size " + std::to_string(k) + " exists");
  }
  return s;
}

ChainTrace run_chain(const SamplingTarget& target, const SamplerConfig& config) {
  if (config.thin == 0) throw Error(ErrorCode::InvalidArgument, "thinning interval must be positive");
  ChainTrace trace;
  trace.seed = config.seed;
  trace.initial = config.initial ? *config.initial : initial_state(target);
  DownUpChain chain(target, trace.initial, config.seed);
  for (std::uint64_t t = 0; t < config.burnin; ++t) chain.step();
  for (std::uint64_t s = 0; s < config.samples; ++s) {
    for (std::uint64_t t = 0; t < config.thin; ++t) chain.step();
    ++trace.visits[chain.face()];
    ++trace.recorded;
    if (config.trace) {
      *config.trace << chain.state().step;
      for (Vertex v : chain.face()) *config.trace << ' ' << v;
      *config.trace << '\n';
    }
  }
  trace.steps = chain.state().step;
  trace.final_state = chain.face();
  return trace;
}

std::vector<State> exact_enumeration(const SamplingTarget& target) {
  const auto k = static_cast<std::size_t>(target.k());
  const auto elems = target.elements();
  std::vector<State> out;
  State s;
  auto search = [&](auto&& self, std::size_t from) -> void {
    if (s.size() == k) {
      if (out.size() == kExactStateLimit) {
        throw Error(ErrorCode::TooLarge, "more than " + std::to_string(kExactStateLimit) + " states");
      }
      out.push_back(s);
      return;
    }
    for (std::size_t i = from; i + (k - s.size()) <= elems.size(); ++i) {
      if (!target.can_add(s, elems[i])) continue;
      s.push_back(elems[i]);
      self(self, i + 1);
      s.pop_back();
    }
  };
  search(search, 0);
  return out;
}

double tv_distance(const std::map<State, std::uint64_t>& visits, std::span<const State> exact) {
  if (exact.empty()) throw Error(ErrorCode::InvalidArgument, "empty state list");
  std::uint64_t total = 0;
  for (const auto& [s, c] : visits) total += c;
  const double u = 1.0 / static_cast<double>(exact.size());
  double l1 = 0.0;
  std::uint64_t matched = 0;
  for (const State& s : exact) {
    const auto it = visits.find(s);
    const std::uint64_t c = it == visits.end() ? 0 : it->second;
    matched += c;
    const double emp = total ? static_cast<double>(c) / static_cast<double>(total) : 0.0;
    l1 += std::abs(emp - u);
  }
  // Mass on states outside the list counts fully.
  if (total) l1 += static_cast<double>(total - matched) / static_cast<double>(total);
  return 0.5 * l1;
}

double tv_distance(const ChainTrace& trace, std::span<const State> exact) {
  return tv_distance(trace.visits, exact);
}

std::map<State, std::uint64_t> endpoint_counts(const SamplingTarget& target, const State& start,
                                               std::uint64_t steps, std::uint64_t chains, std::uint64_t seed) {
  std::map<State, std::uint64_t> counts;
  CounterRng seeds(seed);
  for (std::uint64_t c = 0; c < chains; ++c) {
    DownUpChain chain(target, start, seeds());
    for (std::uint64_t t = 0; t < steps; ++t) chain.step();
    ++counts[chain.face()];
  }
  return counts;
}

double l1_sampling_slack(std::span<const double> p, std::uint64_t n, double sigmas) {
  const double dn = static_cast<double>(n);
  double mean = 0.0;
  double var = 0.0;
  for (double q : p) {
    const double v = q * (1.0 - q) / dn;
    mean += std::sqrt(2.0 * v / std::numbers::pi);
    var += v * (1.0 - 2.0 / std::numbers::pi);
  }
  return mean + sigmas * std::sqrt(var);
}

Eigen::MatrixXd transition_counts(const SamplingTarget& target, std::span<const State> exact, const State& start,
                                  std::uint64_t steps, std::uint64_t seed) {
  const auto m = static_cast<Eigen::Index>(exact.size());
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(m, m);
  auto index = [&](const State& s) {
    const auto it = std::lower_bound(exact.begin(), exact.end(), s);
    if (it == exact.end() || *it != s) throw Error(ErrorCode::InvalidArgument, "state outside the enumeration");
    return static_cast<Eigen::Index>(it - exact.begin());
  };
  DownUpChain chain(target, start, seed);
  Eigen::Index from = index(chain.face());
  for (std::uint64_t t = 0; t < steps; ++t) {
    chain.step();
    const Eigen::Index to = index(chain.face());
    counts(from, to) += 1.0;
    from = to;
  }
  return counts;
}

GoodnessOfFit chi_square_fit(const Eigen::MatrixXd& counts, const Eigen::MatrixXd& p) {
  if (counts.rows() != p.rows() || counts.cols() != p.cols()) {
    throw Error(ErrorCode::InvalidArgument, "count and kernel shapes differ");
  }
  GoodnessOfFit fit;
  for (Eigen::Index x = 0; x < counts.rows(); ++x) {
    const double n = counts.row(x).sum();
    if (n == 0.0) continue;
    int support = 0;
    for (Eigen::Index y = 0; y < counts.cols(); ++y) {
      const double q = p(x, y);
      if (q > 1e-15) {
        ++support;
        const double e = n * q;
        const double diff = counts(x, y) - e;
        fit.statistic += diff * diff / e;
      } else if (counts(x, y) > 0.0) {
        ++fit.impossible;
      }
    }
    fit.dof += support - 1;
  }
  if (fit.impossible > 0) {
    fit.p_value = 0.0;
  } else if (fit.dof > 0) {
    fit.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(fit.dof), fit.statistic));
  } else {
    fit.p_value = 1.0;
  }
  return fit;
}

}  // namespace hodgewalk
