#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "hodgewalk/complex.hpp"

namespace hodgewalk {

/// Largest level size the dense operators will materialize unless overridden.
inline constexpr std::size_t kDefaultDenseCap = 5000;

enum class OperatorKind { Up, Down, DownUp, UpDown, NonLazyUpDown, LongUpDown };

std::string_view to_string(OperatorKind kind) noexcept;

/**
 * A dense real matrix between two face levels.
 *
 * Operators act on functions from the right: rows are indexed by the
 * codomain level and columns by the domain level, so `matrix * f` evaluates
 * the operator on f. Read as a Markov kernel acting on distributions from the
 * left, the same matrix moves mass from the row level to the column level.
 */
struct WeightedOperator {
  Eigen::MatrixXd matrix;
  int domain_level = 0;
  int codomain_level = 0;
  Eigen::VectorXd domain_pi;
  Eigen::VectorXd codomain_pi;
  OperatorKind kind = OperatorKind::Up;

  /// max_x |sum_y M(x,y) - 1|
  double row_sum_residual() const;
  /// max_{x,y} |Pi(x) M(x,y) - Pi(y) M(y,x)| for square operators.
  double self_adjoint_residual() const;
};

struct OperatorOptions {
  std::size_t cap = kDefaultDenseCap;
};

/// Up_j: R^{X(j)} -> R^{X(j+1)}, [Up_j f](beta) = mean of f over the facets of beta.
WeightedOperator up_operator(const WeightedComplex& x, int j, OperatorOptions opts = {});
/// D_{j+1}: R^{X(j+1)} -> R^{X(j)}, the Pi-weighted average over cofaces.
WeightedOperator down_operator(const WeightedComplex& x, int j_plus_1, OperatorOptions opts = {});

/// DownW_j = Up_{j-1} D_j on X(j), 0 <= j <= d.
WeightedOperator down_up_walk(const WeightedComplex& x, int j, OperatorOptions opts = {});
/// UpW_j = D_{j+1} Up_j on X(j), -1 <= j <= d-1.
WeightedOperator up_down_walk(const WeightedComplex& x, int j, OperatorOptions opts = {});
/// NUpW_j = (j+2)/(j+1) (UpW_j - I/(j+2)), 0 <= j <= d-1.
WeightedOperator nonlazy_up_down_walk(const WeightedComplex& x, int j, OperatorOptions opts = {});
/// UpW_{a,b} = D_{a+1} ... D_b Up_{b-1} ... Up_a, -1 <= a < b <= d.
WeightedOperator long_walk(const WeightedComplex& x, int a, int b, OperatorOptions opts = {});

/// max over basis vectors of |<g, Up_j f>_{Pi_{j+1}} - <D_{j+1} g, f>_{Pi_j}|.
double adjointness_residual(const WeightedComplex& x, int j, OperatorOptions opts = {});

/// Both sides of the three local-to-global quadratic form identities on X(j).
/// The non-lazy pair needs NUpW_j and is absent at the top level j = d.
struct GarlandTerms {
  double id_q = 0.0;
  double down_q = 0.0;
  std::optional<double> nonlazy_q;
  double rhs_id_q = 0.0;
  double rhs_down_q = 0.0;
  std::optional<double> rhs_nonlazy_q;

  double max_discrepancy() const;
};

GarlandTerms garland_terms(const WeightedComplex& x, int j, const Eigen::VectorXd& f,
                           OperatorOptions opts = {});

/// Pi-weighted inner product sum_i pi_i f_i g_i.
double weighted_inner(const Eigen::VectorXd& pi, const Eigen::VectorXd& f, const Eigen::VectorXd& g);

Eigen::VectorXd level_pi(const WeightedComplex& x, int j);

/// Dense text format: "rows cols" then one row per line, 17 significant digits.
void write_matrix(std::ostream& os, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& is);

}  // namespace hodgewalk
