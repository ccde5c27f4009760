#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/error.hpp"
#include "hodgewalk/operators.hpp"
#include "hodgewalk/spectral.hpp"
#include "oracles.hpp"

using namespace hodgewalk;

namespace {

oracle::Facets two_triangles() { return {{{1, 2, 3}, {1, 2, 4}}, {1.0, 1.0}}; }

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

Eigen::VectorXd gaussian(CounterRng& rng, std::size_t n) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = nd(rng);
  return v;
}

// Right-hand sides of the local-to-global identities evaluated link by link.
struct LocalSums {
  double id = 0.0;
  double down = 0.0;
  double nonlazy = 0.0;
};

LocalSums local_sums(const oracle::Facets& in, const WeightedComplex& x, int j, const Eigen::VectorXd& f) {
  LocalSums s;
  for (std::size_t a = 0; a < x.size(j - 1); ++a) {
    const Face& alpha = x.face(j - 1, a);
    const double p = x.pi(j - 1)[a];
    const auto w = oracle::link_walk(in, alpha);
    Eigen::VectorXd fa(w.pi0.size());
    for (Eigen::Index i = 0; i < fa.size(); ++i) fa(i) = f(static_cast<Eigen::Index>(*x.index_of(alpha.with(w.vertices[i]))));
    s.id += p * w.pi0.dot(fa.cwiseProduct(fa));
    const double mean = w.pi0.dot(fa);
    s.down += p * mean * mean;
    if (j < x.dimension()) s.nonlazy += p * fa.dot(w.pi0.asDiagonal() * (w.m * fa));
  }
  return s;
}

}  // namespace

TEST_CASE("up operator examples") {
  const auto x = oracle::build(two_triangles());
  const auto u = up_operator(x, -1);
  CHECK(u.matrix.cols() == 1);
  CHECK(u.matrix.rows() == 4);
  CHECK(u.matrix.isOnes());

  const auto u0 = up_operator(x, 0);
  const auto row = static_cast<Eigen::Index>(*x.index_of(Face{1, 2}));
  CHECK(u0.matrix(row, 0) == 0.5);
  CHECK(u0.matrix(row, 1) == 0.5);
  CHECK(u0.matrix(row, 2) == 0.0);
  CHECK(u0.matrix(row, 3) == 0.0);
  for (int j = -1; j <= 1; ++j) CHECK(up_operator(x, j).row_sum_residual() == 0.0);

  CHECK(code_of([&] { up_operator(x, 2); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { up_operator(x, -2); }) == ErrorCode::LevelOutOfRange);
}

TEST_CASE("down operator examples") {
  const auto x = oracle::build(two_triangles());
  const auto d1 = down_operator(x, 1);
  const auto r3 = static_cast<Eigen::Index>(*x.index_of(Face{3}));
  CHECK(d1.matrix(r3, static_cast<Eigen::Index>(*x.index_of(Face{1, 3}))) == doctest::Approx(0.5));
  CHECK(d1.matrix(r3, static_cast<Eigen::Index>(*x.index_of(Face{2, 3}))) == doctest::Approx(0.5));
  CHECK(d1.matrix(r3, static_cast<Eigen::Index>(*x.index_of(Face{1, 2}))) == 0.0);
  for (int j = 0; j <= 2; ++j) CHECK(down_operator(x, j).row_sum_residual() <= 1e-15);
  CHECK(code_of([&] { down_operator(x, 3); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { down_operator(x, -1); }) == ErrorCode::LevelOutOfRange);
}

TEST_CASE("walks on small complexes") {
  const auto x = oracle::build(two_triangles());
  const auto w0 = down_up_walk(x, 0);
  const Eigen::MatrixXd rank_one = Eigen::VectorXd::Ones(4) * level_pi(x, 0).transpose();
  CHECK(max_abs(w0.matrix - rank_one) <= 1e-15);
  const auto ev0 = weighted_spectrum(w0);
  CHECK(ev0[0] == doctest::Approx(1.0));
  CHECK(second_eigenvalue(ev0) <= 1e-12);

  const std::vector<Face> apart = {{1, 2}, {3, 4}};
  const auto y = build_complex(apart);
  const auto up = up_down_walk(y, 0);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(up.matrix(i, i) == doctest::Approx(0.5));
  const auto nl = nonlazy_up_down_walk(y, 0);
  Eigen::MatrixXd swap = Eigen::MatrixXd::Zero(4, 4);
  swap(0, 1) = swap(1, 0) = swap(2, 3) = swap(3, 2) = 1.0;
  CHECK(max_abs(nl.matrix - swap) <= 1e-15);

  CHECK(code_of([&] { nonlazy_up_down_walk(y, -1); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { down_up_walk(y, 2); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { up_down_walk(y, 1); }) == ErrorCode::LevelOutOfRange);
  OperatorOptions tiny;
  tiny.cap = 3;
  CHECK(code_of([&] { down_up_walk(y, 0, tiny); }) == ErrorCode::CapExceeded);
}

TEST_CASE("long walk examples") {
  const auto x = complete_complex(5, 2);
  CHECK(max_abs(long_walk(x, 0, 1).matrix - up_down_walk(x, 0).matrix) <= 1e-15);
  CHECK(max_abs(long_walk(x, 1, 2).matrix - up_down_walk(x, 1).matrix) <= 1e-15);
  const auto scalar = long_walk(x, -1, 2);
  REQUIRE(scalar.matrix.rows() == 1);
  CHECK(scalar.matrix(0, 0) == doctest::Approx(1.0));

  const auto l = long_walk(x, 0, 2);
  const double l2 = second_eigenvalue(weighted_spectrum(l));
  CHECK(std::abs(l2 - oracle::lambda2(l.matrix)) <= 1e-9);
  CHECK(code_of([&] { long_walk(x, 1, 1); }) == ErrorCode::BadRange);
  CHECK(code_of([&] { long_walk(x, 0, 3); }) == ErrorCode::LevelOutOfRange);
}

TEST_CASE("adjointness") {
  const auto in = two_triangles();
  const auto x = oracle::build(in);
  for (int j = -1; j <= 1; ++j) CHECK(adjointness_residual(x, j) <= 1e-12);
  CHECK(code_of([&] { adjointness_residual(x, 2); }) == ErrorCode::LevelOutOfRange);

  CounterRng rng(5);
  for (int j = -1; j <= 1; ++j) {
    const auto up = up_operator(x, j);
    const auto down = down_operator(x, j + 1);
    const Eigen::VectorXd one_j = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(x.size(j)));
    const Eigen::VectorXd one_k = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(x.size(j + 1)));
    CHECK(weighted_inner(level_pi(x, j + 1), one_k, up.matrix * one_j) == doctest::Approx(1.0));
    CHECK(weighted_inner(level_pi(x, j), down.matrix * one_k, one_j) == doctest::Approx(1.0));
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd f = gaussian(rng, x.size(j));
      const Eigen::VectorXd g = gaussian(rng, x.size(j + 1));
      const double lhs = weighted_inner(level_pi(x, j + 1), g, up.matrix * f);
      const double rhs = weighted_inner(level_pi(x, j), down.matrix * g, f);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("garland identities on two triangles") {
  const auto x = oracle::build(two_triangles());
  const auto ones = garland_terms(x, 1, Eigen::VectorXd::Ones(5));
  CHECK(ones.id_q == doctest::Approx(1.0));
  CHECK(ones.down_q == doctest::Approx(1.0));
  CHECK(ones.rhs_id_q == doctest::Approx(1.0));
  CHECK(ones.rhs_down_q == doctest::Approx(1.0));
  REQUIRE(ones.nonlazy_q.has_value());
  CHECK(*ones.nonlazy_q == doctest::Approx(1.0));
  CHECK(*ones.rhs_nonlazy_q == doctest::Approx(1.0));

  for (Eigen::Index i = 0; i < 5; ++i) {
    const Eigen::VectorXd e = Eigen::VectorXd::Unit(5, i);
    CHECK(garland_terms(x, 1, e).max_discrepancy() <= 1e-12);
  }
  CHECK_FALSE(garland_terms(x, 2, Eigen::VectorXd::Ones(2)).nonlazy_q.has_value());
  CHECK(code_of([&] { garland_terms(x, 0, Eigen::VectorXd::Ones(4)); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { garland_terms(x, 1, Eigen::VectorXd::Ones(4)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("garland identities against link-by-link sums") {
  CounterRng rng(21);
  const auto in = oracle::random_facets(rng, 9, 3, 30);
  const auto x = oracle::build(in);
  double worst = 0.0;
  for (int j = 1; j <= 3; ++j) {
    for (int t = 0; t < 100; ++t) {
      const Eigen::VectorXd f = gaussian(rng, x.size(j));
      const auto g = garland_terms(x, j, f);
      worst = std::max(worst, g.max_discrepancy());
      if (t < 5) {
        const auto ref = local_sums(in, x, j, f);
        CHECK(std::abs(g.rhs_id_q - ref.id) <= 1e-10);
        CHECK(std::abs(g.rhs_down_q - ref.down) <= 1e-10);
        if (j < 3) CHECK(std::abs(*g.rhs_nonlazy_q - ref.nonlazy) <= 1e-10);
      }
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("operators match transition-probability oracle") {
  CounterRng rng(22);
  for (int t = 0; t < 15; ++t) {
    const int d = 1 + static_cast<int>(rng.uniform_index(3));
    const auto in = oracle::random_facets(rng, d + 4, d, 3 + rng.uniform_index(15));
    const auto x = oracle::build(in);
    const oracle::Levels lv(in);
    for (int j = -1; j < d; ++j) {
      CHECK(max_abs(up_operator(x, j).matrix - oracle::to_library_order(lv, x, j + 1, j, lv.up(j))) <= 1e-12);
      CHECK(max_abs(down_operator(x, j + 1).matrix - oracle::to_library_order(lv, x, j, j + 1, lv.down(j + 1))) <=
            1e-12);
      CHECK(max_abs(up_down_walk(x, j).matrix - oracle::to_library_order(lv, x, j, j, lv.up_down(j))) <= 1e-12);
    }
    for (int k = 0; k <= d; ++k) {
      CHECK(max_abs(down_up_walk(x, k).matrix - oracle::to_library_order(lv, x, k, k, lv.down_up(k))) <= 1e-12);
    }
  }
}

TEST_CASE("walk invariants on random complexes") {
  CounterRng rng(23);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + static_cast<int>(rng.uniform_index(3));
    const auto x = oracle::build(oracle::random_facets(rng, d + 4, d, 4 + rng.uniform_index(20)));
    for (int k = 0; k <= d; ++k) {
      const auto w = down_up_walk(x, k);
      CHECK(w.row_sum_residual() <= 1e-12);
      CHECK(w.self_adjoint_residual() <= 1e-12);
      const Eigen::VectorXd pi = level_pi(x, k);
      CHECK(max_abs(pi.transpose() * w.matrix - pi.transpose()) <= 1e-12);
      CHECK(weighted_spectrum(w).back() >= -1e-9);
    }
    for (int k = 0; k < d; ++k) {
      const auto up = up_down_walk(x, k);
      const auto nl = nonlazy_up_down_walk(x, k);
      CHECK(nl.row_sum_residual() <= 1e-12);
      CHECK(nl.self_adjoint_residual() <= 1e-12);
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(up.matrix.rows(), up.matrix.cols());
      CHECK(max_abs(nl.matrix - (k + 2.0) / (k + 1.0) * (up.matrix - id / (k + 2.0))) <= 1e-15);
      CHECK(nl.matrix.diagonal().cwiseAbs().maxCoeff() <= 1e-12);
    }
    for (int a = -1; a < d; ++a) {
      for (int b = a + 1; b <= d; ++b) {
        const auto l = long_walk(x, a, b);
        CHECK(l.row_sum_residual() <= 1e-12);
        CHECK(l.self_adjoint_residual() <= 1e-12);
        CHECK(weighted_spectrum(l).back() >= -1e-9);
      }
    }
  }
}

TEST_CASE("down-up and up-down walks share their nonzero spectrum") {
  CounterRng rng(24);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + static_cast<int>(rng.uniform_index(3));
    const auto x = oracle::build(oracle::random_facets(rng, d + 4, d, 4 + rng.uniform_index(20)));
    for (int j = -1; j < d; ++j) {
      auto a = weighted_spectrum(down_up_walk(x, j + 1));
      auto b = weighted_spectrum(up_down_walk(x, j));
      auto nonzero = [](std::vector<double> v) {
        std::erase_if(v, [](double e) { return std::abs(e) <= 1e-9; });
        return v;
      };
      a = nonzero(a);
      b = nonzero(b);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9);
    }
  }
}

TEST_CASE("matrix text round trip") {
  Eigen::MatrixXd m(2, 3);
  m << 1.0 / 3, -2.5e-17, 7, 0, 1e300, -0.125;
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);
}
