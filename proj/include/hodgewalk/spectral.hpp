#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/operators.hpp"

namespace hodgewalk {

/// Absolute tolerance for every spectral pass/fail decision.
inline constexpr double kSpectralTolerance = 1e-9;

enum class Status { Pass, Fail, Skipped };
enum class Relation { AtMost, AtLeast };

std::string_view to_string(Status s) noexcept;

/// One numeric assertion: `value <= bound + tolerance` (or `>=` with minus).
struct Assertion {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double tolerance = kSpectralTolerance;
  Relation relation = Relation::AtMost;
  Status status = Status::Skipped;
  std::string note;

  static Assertion check(std::string name, double value, Relation rel, double bound,
                         double tolerance = kSpectralTolerance);
  static Assertion skipped(std::string name, std::string why, double value = 0.0, double bound = 0.0);

  bool passed() const noexcept { return status == Status::Pass; }
  bool failed() const noexcept { return status == Status::Fail; }
};

/// Eigenvalues of an operator self-adjoint in its domain Pi inner product, descending.
std::vector<double> weighted_spectrum(const WeightedOperator& op);
/// Same for an arbitrary matrix that is self-adjoint w.r.t. `pi` (need not be stochastic).
std::vector<double> weighted_spectrum(const Eigen::MatrixXd& m, const Eigen::VectorXd& pi);

/// Second entry of a descending spectrum; 0 when the space has a single state.
double second_eigenvalue(std::span<const double> descending);
/// Second largest absolute eigenvalue, i.e. sigma_2 for a self-adjoint operator.
double second_singular_value(std::span<const double> descending);

/// lambda_2 of a link walk; exactly 1 when the link graph is disconnected.
double link_lambda2(const LinkGraph& g);

struct GammaLevel {
  int level = -1;
  double gamma = 0.0;
  Face argmax;
  std::size_t links = 0;
  std::size_t disconnected = 0;

  bool all_connected() const noexcept { return disconnected == 0; }
};

/// gamma_j for j = -1, ..., d-2.
struct GammaProfile {
  std::vector<GammaLevel> levels;

  bool has(int j) const noexcept { return j >= -1 && j + 1 < static_cast<int>(levels.size()); }
  double at(int j) const;
  const GammaLevel& level(int j) const;
  /// max_j gamma_j, or 0 when the profile is empty.
  double max() const;
  /// gamma values with index i holding gamma_{i-1}.
  std::vector<double> values() const;
};

GammaProfile gamma_profile(const WeightedComplex& x);

/// 1 - 1/(k+1) * prod_{j=-1}^{k-2} (1 - gamma_j); `gammas[i]` is gamma_{i-1}.
double main_bound(std::span<const double> gammas, int k);
Assertion check_main(const WeightedComplex& x, int k, const GammaProfile& gamma, OperatorOptions opts = {});
Assertion check_main(const WeightedComplex& x, int k, OperatorOptions opts = {});

struct EigencountResult {
  int k = 0;
  int r = -1;
  double threshold = 0.0;
  std::size_t count = 0;
  std::size_t cap = 0;
  bool pass = false;
};

EigencountResult eigencount_check(const WeightedComplex& x, int k, int r, const GammaProfile& gamma,
                                  OperatorOptions opts = {});
/// Overload reusing an already computed spectrum of UpW_k.
EigencountResult eigencount_check(const WeightedComplex& x, int k, int r, const GammaProfile& gamma,
                                  std::span<const double> upw_spectrum);

/// Minimum Pi_k-eigenvalue of gamma_{k-1}(I - DownW_k) - (NUpW_k - DownW_k).
double updownrel_certificate(const WeightedComplex& x, int k, const GammaProfile& gamma,
                             OperatorOptions opts = {});

/// Trickle-down bound gamma_{d-2} / (1 - (d-2-j) gamma_{d-2}); throws DenominatorNonpositive.
double trickle_down_bound(double gamma_top, int d, int j);
/// gamma_{j-1} <= gamma_j / (1 - gamma_j), asserted only when its hypotheses hold.
Assertion oppenheim_step_check(const WeightedComplex& x, int j, const GammaProfile& gamma);

/// lambda_2(DownW_k) <= 1 - 1/(k+1)^2 when gamma_{k-2} <= 1/(k+1) and lower links connect.
Assertion main_cooked_check(const WeightedComplex& x, int k, const GammaProfile& gamma,
                            OperatorOptions opts = {});

struct LongWalkResult {
  int a = 0;
  int b = 1;
  double gamma = 0.0;
  double bound = 0.0;
  double lambda2 = 0.0;
  double sigma2 = 0.0;
  double product_bound = 0.0;  // prod_{i=a}^{b-1} lambda_2(UpW_i)
  Assertion bound_check;
  Assertion product_check;
};

LongWalkResult long_walk_bound_check(const WeightedComplex& x, int a, int b, double gamma,
                                     const GammaProfile& profile, OperatorOptions opts = {});

/// Stationary-weighted escape probability Pr[X_1 not in S | X_0 in S].
double conductance(const WeightedOperator& walk, std::span<const std::size_t> states);

struct CheegerResult {
  double lambda2 = 0.0;
  double conductance = 0.0;
  std::vector<std::size_t> minimizer;
  bool exhaustive = false;
  Assertion lower_check;
  Assertion upper_check;
};

/// Largest state space searched exhaustively by `cheeger_check`.
inline constexpr std::size_t kExhaustiveCheegerStates = 18;

/// Checks both Cheeger directions on the conductance minimiser. Above
/// kExhaustiveCheegerStates only `candidates` are searched and the upper
/// direction is skipped.
CheegerResult cheeger_check(const WeightedOperator& walk,
                            std::span<const std::vector<std::size_t>> candidates = {});

/// For every vertex v, the indices of level-j faces containing v (the star A_v).
std::vector<std::vector<std::size_t>> vertex_stars(const WeightedComplex& x, int j);

struct NonExpansionResult {
  Vertex vertex = 0;
  double star_measure = 0.0;
  double star_conductance = 0.0;
  double lambda2 = 0.0;
  Assertion lambda_check;  // lambda_2(DownW_d) >= 1 - 2/(d+1)
  Assertion star_check;    // Phi(A_v) <= 1/(d+1)
};

/// Lower bound on lambda_2(DownW_d); throws HypothesisNotMet unless 2(d+1) <= |X(0)|.
NonExpansionResult nonexp_check(const WeightedComplex& x, OperatorOptions opts = {});

/// ceil((1/(1 - sigma2)) * log(1/(eps * pi_min))).
std::uint64_t mixing_time_budget(double sigma2, double pi_min, double eps);

}  // namespace hodgewalk
