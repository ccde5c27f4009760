#include "hodgewalk/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "hodgewalk/error.hpp"

namespace hodgewalk {

std::string_view to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::Up: return "Up";
    case OperatorKind::Down: return "Down";
    case OperatorKind::DownUp: return "DownUp";
    case OperatorKind::UpDown: return "UpDown";
    case OperatorKind::NonLazyUpDown: return "NonLazyUpDown";
    case OperatorKind::LongUpDown: return "LongUpDown";
  }
  return "Unknown";
}

namespace {

void require_level(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::LevelOutOfRange, what);
}

void check_cap(const WeightedComplex& x, int j, const OperatorOptions& opts) {
  if (x.size(j) > opts.cap) {
    throw Error(ErrorCode::CapExceeded, "level " + std::to_string(j) + " has " +
                                            std::to_string(x.size(j)) + " faces, cap is " +
                                            std::to_string(opts.cap));
  }
}

Eigen::MatrixXd up_matrix(const WeightedComplex& x, int j) {
  const auto rows = static_cast<Eigen::Index>(x.size(j + 1));
  const auto cols = static_cast<Eigen::Index>(x.size(j));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  const double w = 1.0 / (j + 2);
  for (Eigen::Index b = 0; b < rows; ++b) {
    for (std::size_t a : x.boundary(j + 1, static_cast<std::size_t>(b))) {
      m(b, static_cast<Eigen::Index>(a)) += w;
    }
  }
  return m;
}

Eigen::MatrixXd down_matrix(const WeightedComplex& x, int j) {
  // D_{j+1}: rows X(j), columns X(j+1).
  const auto rows = static_cast<Eigen::Index>(x.size(j));
  const auto cols = static_cast<Eigen::Index>(x.size(j + 1));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  const auto lower = x.pi(j);
  const auto upper = x.pi(j + 1);
  for (Eigen::Index a = 0; a < rows; ++a) {
    const double denom = (j + 2) * lower[static_cast<std::size_t>(a)];
    for (std::size_t b : x.cofaces(j, static_cast<std::size_t>(a))) {
      m(a, static_cast<Eigen::Index>(b)) = upper[b] / denom;
    }
  }
  return m;
}

WeightedOperator square(const WeightedComplex& x, int j, Eigen::MatrixXd m, OperatorKind kind) {
  WeightedOperator op;
  op.matrix = std::move(m);
  op.domain_level = op.codomain_level = j;
  op.domain_pi = op.codomain_pi = level_pi(x, j);
  op.kind = kind;
  return op;
}

}  // namespace

Eigen::VectorXd level_pi(const WeightedComplex& x, int j) {
  const auto p = x.pi(j);
  return Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
}

double weighted_inner(const Eigen::VectorXd& pi, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  return (pi.array() * f.array() * g.array()).sum();
}

double WeightedOperator::row_sum_residual() const {
  if (matrix.size() == 0) return 0.0;
  return (matrix.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

double WeightedOperator::self_adjoint_residual() const {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::InvalidArgument, "self-adjointness needs a square operator");
  }
  const Eigen::MatrixXd flow = domain_pi.asDiagonal() * matrix;
  return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

WeightedOperator up_operator(const WeightedComplex& x, int j, OperatorOptions opts) {
  require_level(j >= -1 && j <= x.dimension() - 1,
                "Up_j needs -1 <= j <= d-1, got j = " + std::to_string(j));
  check_cap(x, j, opts);
  check_cap(x, j + 1, opts);
  WeightedOperator op;
  op.matrix = up_matrix(x, j);
  op.domain_level = j;
  op.codomain_level = j + 1;
  op.domain_pi = level_pi(x, j);
  op.codomain_pi = level_pi(x, j + 1);
  op.kind = OperatorKind::Up;
  return op;
}

WeightedOperator down_operator(const WeightedComplex& x, int j_plus_1, OperatorOptions opts) {
  require_level(j_plus_1 >= 0 && j_plus_1 <= x.dimension(),
                "D_{j+1} needs 0 <= j+1 <= d, got " + std::to_string(j_plus_1));
  const int j = j_plus_1 - 1;
  check_cap(x, j, opts);
  check_cap(x, j_plus_1, opts);
  WeightedOperator op;
  op.matrix = down_matrix(x, j);
  op.domain_level = j_plus_1;
  op.codomain_level = j;
  op.domain_pi = level_pi(x, j_plus_1);
  op.codomain_pi = level_pi(x, j);
  op.kind = OperatorKind::Down;
  return op;
}

WeightedOperator down_up_walk(const WeightedComplex& x, int j, OperatorOptions opts) {
  require_level(j >= 0 && j <= x.dimension(), "DownW_j needs 0 <= j <= d, got " + std::to_string(j));
  check_cap(x, j, opts);
  check_cap(x, j - 1, opts);
  return square(x, j, up_matrix(x, j - 1) * down_matrix(x, j - 1), OperatorKind::DownUp);
}

WeightedOperator up_down_walk(const WeightedComplex& x, int j, OperatorOptions opts) {
  require_level(j >= -1 && j <= x.dimension() - 1,
                "UpW_j needs -1 <= j <= d-1, got " + std::to_string(j));
  check_cap(x, j, opts);
  check_cap(x, j + 1, opts);
  return square(x, j, down_matrix(x, j) * up_matrix(x, j), OperatorKind::UpDown);
}

WeightedOperator nonlazy_up_down_walk(const WeightedComplex& x, int j, OperatorOptions opts) {
  require_level(j >= 0 && j <= x.dimension() - 1,
                "NUpW_j needs 0 <= j <= d-1, got " + std::to_string(j));
  WeightedOperator op = up_down_walk(x, j, opts);
  const auto n = op.matrix.rows();
  op.matrix = (static_cast<double>(j + 2) / (j + 1)) *
              (op.matrix - Eigen::MatrixXd::Identity(n, n) / (j + 2));
  op.kind = OperatorKind::NonLazyUpDown;
  return op;
}

WeightedOperator long_walk(const WeightedComplex& x, int a, int b, OperatorOptions opts) {
  require_level(a >= -1 && b <= x.dimension(),
                "UpW_{a,b} needs -1 <= a < b <= d, got a = " + std::to_string(a) +
                    ", b = " + std::to_string(b));
  if (a >= b) throw Error(ErrorCode::BadRange, "UpW_{a,b} needs a < b");
  for (int i = a; i <= b; ++i) check_cap(x, i, opts);

  Eigen::MatrixXd up = up_matrix(x, a);
  Eigen::MatrixXd down = down_matrix(x, a);
  for (int i = a + 1; i < b; ++i) {
    up = up_matrix(x, i) * up;
    down = down * down_matrix(x, i);
  }
  return square(x, a, down * up, OperatorKind::LongUpDown);
}

double adjointness_residual(const WeightedComplex& x, int j, OperatorOptions opts) {
  const WeightedOperator up = up_operator(x, j, opts);
  const WeightedOperator down = down_operator(x, j + 1, opts);
  // <e_b, Up e_a>_{Pi_{j+1}} = Pi_{j+1}(b) Up(b,a); <D e_b, e_a>_{Pi_j} = Pi_j(a) D(a,b).
  const Eigen::MatrixXd lhs = up.codomain_pi.asDiagonal() * up.matrix;
  const Eigen::MatrixXd rhs = (down.codomain_pi.asDiagonal() * down.matrix).transpose();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double GarlandTerms::max_discrepancy() const {
  double worst = std::max(std::abs(id_q - rhs_id_q), std::abs(down_q - rhs_down_q));
  if (nonlazy_q && rhs_nonlazy_q) worst = std::max(worst, std::abs(*nonlazy_q - *rhs_nonlazy_q));
  return worst;
}

GarlandTerms garland_terms(const WeightedComplex& x, int j, const Eigen::VectorXd& f,
                           OperatorOptions opts) {
  require_level(j >= 1 && j <= x.dimension(),
                "Garland identities need 1 <= j <= d, got " + std::to_string(j));
  if (static_cast<std::size_t>(f.size()) != x.size(j)) {
    throw Error(ErrorCode::InvalidArgument, "vector length does not match |X(j)|");
  }
  GarlandTerms t;
  const Eigen::VectorXd pi = level_pi(x, j);
  t.id_q = weighted_inner(pi, f, f);
  t.down_q = weighted_inner(pi, f, down_up_walk(x, j, opts).matrix * f);
  const bool has_nonlazy = j <= x.dimension() - 1;
  if (has_nonlazy) {
    t.nonlazy_q = weighted_inner(pi, f, nonlazy_up_down_walk(x, j, opts).matrix * f);
  }

  // Local side: expectation over alpha ~ Pi_{j-1} of link quadratic forms.
  const auto lower = x.pi(j - 1);
  const auto upper = x.pi(j);
  double rhs_nonlazy = 0.0;
  for (std::size_t a = 0; a < x.size(j - 1); ++a) {
    double norm2 = 0.0;
    double mean = 0.0;
    for (std::size_t b : x.cofaces(j - 1, a)) {
      const double p0 = upper[b] / ((j + 1) * lower[a]);
      const double fb = f(static_cast<Eigen::Index>(b));
      norm2 += p0 * fb * fb;
      mean += p0 * fb;
    }
    t.rhs_id_q += lower[a] * norm2;
    t.rhs_down_q += lower[a] * mean * mean;

    if (has_nonlazy) {
      const Face& alpha = x.face(j - 1, a);
      const LinkGraph g = link_graph(x, alpha);
      Eigen::VectorXd fa(static_cast<Eigen::Index>(g.order()));
      for (std::size_t v = 0; v < g.order(); ++v) {
        fa(static_cast<Eigen::Index>(v)) = f(static_cast<Eigen::Index>(*x.index_of(alpha.with(g.vertices[v]))));
      }
      rhs_nonlazy += lower[a] * weighted_inner(g.pi0, fa, g.walk * fa);
    }
  }
  if (has_nonlazy) t.rhs_nonlazy_q = rhs_nonlazy;
  return t;
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      if (c) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& is) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) {
    throw Error(ErrorCode::ParseError, "matrix header must be 'rows cols'");
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!(is >> m(r, c))) {
        throw Error(ErrorCode::ParseError, "matrix entry (" + std::to_string(r) + ", " +
                                               std::to_string(c) + ") missing");
      }
    }
  }
  return m;
}

}  // namespace hodgewalk
