#include "hodgewalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hodgewalk/error.hpp"

namespace hodgewalk {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

Assertion Assertion::check(std::string name, double value, Relation rel, double bound, double tolerance) {
  Assertion a;
  a.name = std::move(name);
  a.value = value;
  a.bound = bound;
  a.tolerance = tolerance;
  a.relation = rel;
  const bool ok = rel == Relation::AtMost ? value <= bound + tolerance : value >= bound - tolerance;
  a.status = ok ? Status::Pass : Status::Fail;
  return a;
}

Assertion Assertion::skipped(std::string name, std::string why, double value, double bound) {
  Assertion a;
  a.name = std::move(name);
  a.value = value;
  a.bound = bound;
  a.status = Status::Skipped;
  a.note = std::move(why);
  return a;
}

std::vector<double> weighted_spectrum(const Eigen::MatrixXd& m, const Eigen::VectorXd& pi) {
  if (m.rows() != m.cols() || m.rows() != pi.size()) {
    throw Error(ErrorCode::InvalidArgument, "spectrum needs a square matrix matching pi");
  }
  if (pi.size() == 0) return {};
  if (!(pi.minCoeff() > 0.0)) throw Error(ErrorCode::NonPositivePi, "weights must be positive");
  const Eigen::MatrixXd flow = pi.asDiagonal() * m;
  const double residual = (flow - flow.transpose()).cwiseAbs().maxCoeff();
  if (residual > kSpectralTolerance) {
    std::ostringstream os;
    os << "residual " << residual;
    throw Error(ErrorCode::NotSelfAdjoint, os.str());
  }
  const Eigen::VectorXd root = pi.array().sqrt();
  const Eigen::VectorXd inv_root = root.cwiseInverse();
  Eigen::MatrixXd s = root.asDiagonal() * m * inv_root.asDiagonal();
  s = 0.5 * (s + s.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "symmetric eigensolver did not converge");
  }
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

std::vector<double> weighted_spectrum(const WeightedOperator& op) {
  return weighted_spectrum(op.matrix, op.domain_pi);
}

double second_eigenvalue(std::span<const double> descending) {
  return descending.size() >= 2 ? descending[1] : 0.0;
}

double second_singular_value(std::span<const double> descending) {
  std::vector<double> mags(descending.begin(), descending.end());
  for (double& v : mags) v = std::abs(v);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  return mags.size() >= 2 ? mags[1] : 0.0;
}

double link_lambda2(const LinkGraph& g) {
  if (!g.connected()) return 1.0;
  return second_eigenvalue(weighted_spectrum(g.walk, g.pi0));
}

double GammaProfile::at(int j) const { return level(j).gamma; }

const GammaLevel& GammaProfile::level(int j) const {
  if (!has(j)) throw Error(ErrorCode::LevelOutOfRange, "gamma_" + std::to_string(j) + " not available");
  return levels[static_cast<std::size_t>(j + 1)];
}

double GammaProfile::max() const {
  if (levels.empty()) return 0.0;
  double m = levels.front().gamma;
  for (const auto& l : levels) m = std::max(m, l.gamma);
  return m;
}

std::vector<double> GammaProfile::values() const {
  std::vector<double> out;
  out.reserve(levels.size());
  for (const auto& l : levels) out.push_back(l.gamma);
  return out;
}

GammaProfile gamma_profile(const WeightedComplex& x) {
  GammaProfile profile;
  for (int j = -1; j <= x.dimension() - 2; ++j) {
    GammaLevel gl;
    gl.level = j;
    gl.gamma = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(j); ++i) {
      const LinkGraph g = link_graph(x, x.face(j, i));
      const double l2 = link_lambda2(g);
      ++gl.links;
      if (!g.connected()) ++gl.disconnected;
      if (l2 > gl.gamma) {
        gl.gamma = l2;
        gl.argmax = g.alpha;
      }
    }
    profile.levels.push_back(std::move(gl));
  }
  return profile;
}

double main_bound(std::span<const double> gammas, int k) {
  if (k < 0) throw Error(ErrorCode::LevelOutOfRange, "k must be non-negative");
  if (k > static_cast<int>(gammas.size())) {
    throw Error(ErrorCode::LevelOutOfRange, "gamma_" + std::to_string(k - 2) + " not supplied");
  }
  double product = 1.0;
  for (int j = -1; j <= k - 2; ++j) product *= 1.0 - gammas[static_cast<std::size_t>(j + 1)];
  return 1.0 - product / (k + 1);
}

Assertion check_main(const WeightedComplex& x, int k, const GammaProfile& gamma, OperatorOptions opts) {
  if (k < 0 || k > x.dimension()) {
    throw Error(ErrorCode::LevelOutOfRange, "main bound needs 0 <= k <= d");
  }
  const double bound = main_bound(gamma.values(), k);
  const double actual = second_eigenvalue(weighted_spectrum(down_up_walk(x, k, opts)));
  return Assertion::check("main_bound[k=" + std::to_string(k) + "]", actual, Relation::AtMost, bound);
}

Assertion check_main(const WeightedComplex& x, int k, OperatorOptions opts) {
  return check_main(x, k, gamma_profile(x), opts);
}

namespace {

void require_eigencount_range(const WeightedComplex& x, int k, int r) {
  if (k < 0 || k > x.dimension() - 1 || r < -1 || r > k) {
    throw Error(ErrorCode::LevelOutOfRange, "eigenvalue count needs 0 <= k <= d-1 and -1 <= r <= k");
  }
}

}  // namespace

EigencountResult eigencount_check(const WeightedComplex& x, int k, int r, const GammaProfile& gamma,
                                  std::span<const double> upw_spectrum) {
  require_eigencount_range(x, k, r);
  EigencountResult res;
  res.k = k;
  res.r = r;
  double product = 1.0;
  for (int j = r; j <= k - 1; ++j) product *= 1.0 - gamma.at(j);
  res.threshold = 1.0 - product / (k + 2);
  res.count = static_cast<std::size_t>(std::count_if(
      upw_spectrum.begin(), upw_spectrum.end(),
      [&](double v) { return v > res.threshold + kSpectralTolerance; }));
  res.cap = x.size(r);
  res.pass = res.count <= res.cap;
  return res;
}

EigencountResult eigencount_check(const WeightedComplex& x, int k, int r, const GammaProfile& gamma,
                                  OperatorOptions opts) {
  require_eigencount_range(x, k, r);
  const auto spectrum = weighted_spectrum(up_down_walk(x, k, opts));
  return eigencount_check(x, k, r, gamma, spectrum);
}

double updownrel_certificate(const WeightedComplex& x, int k, const GammaProfile& gamma,
                             OperatorOptions opts) {
  if (k < 0 || k > x.dimension() - 1) {
    throw Error(ErrorCode::LevelOutOfRange, "operator inequality needs 0 <= k <= d-1");
  }
  const WeightedOperator down_up = down_up_walk(x, k, opts);
  const WeightedOperator nonlazy = nonlazy_up_down_walk(x, k, opts);
  const auto n = down_up.matrix.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd gap =
      gamma.at(k - 1) * (id - down_up.matrix) - (nonlazy.matrix - down_up.matrix);
  const auto spectrum = weighted_spectrum(gap, down_up.domain_pi);
  return spectrum.back();
}

double trickle_down_bound(double gamma_top, int d, int j) {
  if (j > d - 2 || j < -1) throw Error(ErrorCode::LevelOutOfRange, "trickle-down needs -1 <= j <= d-2");
  const double denom = 1.0 - (d - 2 - j) * gamma_top;
  if (denom <= 0.0) {
    throw Error(ErrorCode::DenominatorNonpositive, "1 - (d-2-j) gamma = " + std::to_string(denom));
  }
  return gamma_top / denom;
}

Assertion oppenheim_step_check(const WeightedComplex& x, int j, const GammaProfile& gamma) {
  if (j < 0 || j > x.dimension() - 2) {
    throw Error(ErrorCode::LevelOutOfRange, "trickle-down step needs 0 <= j <= d-2");
  }
  const std::string name = "trickle_down[j=" + std::to_string(j) + "]";
  const double upper = gamma.at(j);
  const double lower = gamma.at(j - 1);
  if (!gamma.level(j - 1).all_connected()) {
    return Assertion::skipped(name, "a link at level j-1 is disconnected", lower);
  }
  if (!(upper < 1.0)) return Assertion::skipped(name, "gamma_j = 1", lower);
  const double bound = upper / (1.0 - upper);
  if (upper > 0.5) return Assertion::skipped(name, "gamma_j > 1/2; reported only", lower, bound);
  return Assertion::check(name, lower, Relation::AtMost, bound);
}

Assertion main_cooked_check(const WeightedComplex& x, int k, const GammaProfile& gamma, OperatorOptions opts) {
  if (k < 0 || k > x.dimension()) throw Error(ErrorCode::LevelOutOfRange, "needs 0 <= k <= d");
  const std::string name = "main_cooked[k=" + std::to_string(k) + "]";
  const double bound = 1.0 - 1.0 / ((k + 1.0) * (k + 1.0));
  std::ostringstream note;
  if (k >= 1) note << "gamma_{k-2} = " << gamma.at(k - 2);
  if (gamma.has(k)) note << (k >= 1 ? ", " : "") << "gamma_k = " << gamma.at(k);
  if (k >= 1) {
    if (gamma.at(k - 2) > 1.0 / (k + 1) + kSpectralTolerance) {
      return Assertion::skipped(name, "hypothesis gamma_{k-2} <= 1/(k+1) not met; " + note.str(), 0.0, bound);
    }
    for (int j = -1; j <= k - 2; ++j) {
      if (!(gamma.at(j) < 1.0)) {
        return Assertion::skipped(name, "gamma_" + std::to_string(j) + " = 1; " + note.str(), 0.0, bound);
      }
    }
  }
  const double actual = second_eigenvalue(weighted_spectrum(down_up_walk(x, k, opts)));
  Assertion a = Assertion::check(name, actual, Relation::AtMost, bound);
  a.note = note.str();
  return a;
}

LongWalkResult long_walk_bound_check(const WeightedComplex& x, int a, int b, double gamma,
                                     const GammaProfile& profile, OperatorOptions opts) {
  if (a < 0 || b > x.dimension() - 1) {
    throw Error(ErrorCode::LevelOutOfRange, "long-walk bound needs 0 <= a < b <= d-1");
  }
  if (a >= b) throw Error(ErrorCode::BadRange, "long-walk bound needs a < b");
  LongWalkResult res;
  res.a = a;
  res.b = b;
  res.gamma = gamma;
  res.bound = std::pow(1.0 + gamma, b - a) * (a + 1.0) / (b + 1.0);
  const auto spectrum = weighted_spectrum(long_walk(x, a, b, opts));
  res.lambda2 = second_eigenvalue(spectrum);
  res.sigma2 = second_singular_value(spectrum);
  res.product_bound = 1.0;
  for (int i = a; i < b; ++i) {
    res.product_bound *= second_eigenvalue(weighted_spectrum(up_down_walk(x, i, opts)));
  }
  const std::string suffix = "[a=" + std::to_string(a) + ",b=" + std::to_string(b) + "]";
  if (profile.max() > gamma + kSpectralTolerance) {
    res.bound_check = Assertion::skipped("long_walk" + suffix, "complex is not a gamma-local-spectral expander",
                                         res.lambda2, res.bound);
  } else {
    res.bound_check = Assertion::check("long_walk" + suffix, res.lambda2, Relation::AtMost, res.bound);
  }
  res.product_check =
      Assertion::check("sigma2_product" + suffix, res.sigma2, Relation::AtMost, res.product_bound);
  return res;
}

double conductance(const WeightedOperator& walk, std::span<const std::size_t> states) {
  const auto n = static_cast<std::size_t>(walk.matrix.rows());
  if (states.empty()) throw Error(ErrorCode::InvalidArgument, "conductance of the empty set");
  std::vector<char> in(n, 0);
  for (std::size_t s : states) {
    if (s >= n) throw Error(ErrorCode::InvalidArgument, "state index out of range");
    in[s] = 1;
  }
  double mass = 0.0;
  double escape = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    if (!in[x]) continue;
    const double px = walk.domain_pi(static_cast<Eigen::Index>(x));
    mass += px;
    double out = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (!in[y]) out += walk.matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    }
    escape += px * out;
  }
  return escape / mass;
}

CheegerResult cheeger_check(const WeightedOperator& walk, std::span<const std::vector<std::size_t>> candidates) {
  CheegerResult res;
  res.lambda2 = second_eigenvalue(weighted_spectrum(walk));
  const auto n = static_cast<std::size_t>(walk.matrix.rows());
  const double half = 0.5 + kDistributionTolerance;
  double best = std::numeric_limits<double>::infinity();

  auto consider = [&](const std::vector<std::size_t>& set) {
    if (set.empty()) return;
    double mass = 0.0;
    for (std::size_t s : set) mass += walk.domain_pi(static_cast<Eigen::Index>(s));
    if (mass > half) return;
    const double phi = conductance(walk, set);
    if (phi < best) {
      best = phi;
      res.minimizer = set;
    }
  };

  if (n <= kExhaustiveCheegerStates) {
    res.exhaustive = true;
    std::vector<std::size_t> set;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      set.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) set.push_back(i);
      }
      consider(set);
    }
  } else {
    for (const auto& set : candidates) consider(set);
  }

  const double gap = 1.0 - res.lambda2;
  if (!std::isfinite(best)) {
    res.lower_check = Assertion::skipped("cheeger_lower", "no set with Pi(S) <= 1/2");
    res.upper_check = Assertion::skipped("cheeger_upper", "no set with Pi(S) <= 1/2");
    return res;
  }
  res.conductance = best;
  res.lower_check = Assertion::check("cheeger_lower", best, Relation::AtLeast, gap / 2.0);
  if (res.exhaustive) {
    res.upper_check = Assertion::check("cheeger_upper", best, Relation::AtMost, std::sqrt(2.0 * gap));
  } else {
    res.upper_check = Assertion::skipped("cheeger_upper", "state space too large for exhaustive search",
                                         best, std::sqrt(2.0 * gap));
  }
  return res;
}

std::vector<std::vector<std::size_t>> vertex_stars(const WeightedComplex& x, int j) {
  if (j < 0 || j > x.dimension()) throw Error(ErrorCode::LevelOutOfRange, "stars need 0 <= j <= d");
  std::vector<std::vector<std::size_t>> stars(x.size(0));
  const auto vertices = x.faces(0);
  for (std::size_t i = 0; i < x.size(j); ++i) {
    for (Vertex v : x.face(j, i)) {
      const auto it = std::lower_bound(vertices.begin(), vertices.end(), Face{v});
      stars[static_cast<std::size_t>(it - vertices.begin())].push_back(i);
    }
  }
  return stars;
}

NonExpansionResult nonexp_check(const WeightedComplex& x, OperatorOptions opts) {
  const int d = x.dimension();
  const std::size_t n = x.size(0);
  if (2 * static_cast<std::size_t>(d + 1) > n) {
    throw Error(ErrorCode::HypothesisNotMet,
                "needs 2(d+1) <= n, have d = " + std::to_string(d) + ", n = " + std::to_string(n));
  }
  NonExpansionResult res;
  const WeightedOperator walk = down_up_walk(x, d, opts);
  res.lambda2 = second_eigenvalue(weighted_spectrum(walk));
  res.lambda_check =
      Assertion::check("nonexp_lambda2", res.lambda2, Relation::AtLeast, 1.0 - 2.0 / (d + 1));

  const auto pi0 = x.pi(0);
  const auto v = static_cast<std::size_t>(std::min_element(pi0.begin(), pi0.end()) - pi0.begin());
  res.vertex = x.face(0, v)[0];
  const auto stars = vertex_stars(x, d);
  for (std::size_t i : stars[v]) res.star_measure += walk.domain_pi(static_cast<Eigen::Index>(i));
  res.star_conductance = conductance(walk, stars[v]);
  res.star_check = Assertion::check("nonexp_star_conductance", res.star_conductance, Relation::AtMost,
                                    1.0 / (d + 1));
  return res;
}

std::uint64_t mixing_time_budget(double sigma2, double pi_min, double eps) {
  if (sigma2 >= 1.0) throw Error(ErrorCode::GapZero, "sigma_2 >= 1");
  if (!(sigma2 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma_2 must be non-negative");
  if (!(pi_min > 0.0 && pi_min <= 1.0)) throw Error(ErrorCode::InvalidArgument, "pi_min must be in (0, 1]");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidArgument, "eps must be in (0, 1)");
  const double steps = std::log(1.0 / (eps * pi_min)) / (1.0 - sigma2);
  if (!(steps < 9.0e18)) throw Error(ErrorCode::TooLarge, "mixing budget overflows");
  return static_cast<std::uint64_t>(std::ceil(steps));
}

}  // namespace hodgewalk
