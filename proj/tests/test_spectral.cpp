#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/error.hpp"
#include "hodgewalk/json_text.hpp"
#include "hodgewalk/operators.hpp"
#include "hodgewalk/report.hpp"
#include "hodgewalk/spectral.hpp"
#include "oracles.hpp"

using namespace hodgewalk;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

WeightedOperator square(Eigen::MatrixXd m, Eigen::VectorXd pi) {
  WeightedOperator op;
  op.matrix = std::move(m);
  op.domain_pi = pi;
  op.codomain_pi = pi;
  op.kind = OperatorKind::DownUp;
  return op;
}

WeightedOperator complete_walk(int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, 1.0 / (n - 1));
  m.diagonal().setZero();
  return square(m, Eigen::VectorXd::Constant(n, 1.0 / n));
}

// Random complexes for the property sweeps: dimension 1..3, mixed densities.
std::vector<oracle::Facets> sweep(std::uint64_t seed, int count) {
  CounterRng rng(seed);
  std::vector<oracle::Facets> out;
  for (int t = 0; t < count; ++t) {
    const int d = 1 + t % 3;
    const int n = d + 3 + static_cast<int>(rng.uniform_index(3));
    const double full = oracle::choose(n, d + 1);
    const double frac = 0.25 + 0.75 * rng.uniform01();
    out.push_back(oracle::random_facets(rng, n, d, static_cast<std::size_t>(std::max(2.0, frac * full))));
  }
  return out;
}

}  // namespace

TEST_CASE("weighted spectrum") {
  const auto ev = weighted_spectrum(complete_walk(4));
  REQUIRE(ev.size() == 4);
  CHECK(ev[0] == doctest::Approx(1.0));
  for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(-1.0 / 3));

  const auto w0 = weighted_spectrum(down_up_walk(complete_complex(5, 2), 0));
  CHECK(w0[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < w0.size(); ++i) CHECK(std::abs(w0[i]) <= 1e-12);

  Eigen::MatrixXd lopsided(2, 2);
  lopsided << 0.5, 0.5, 0.1, 0.9;
  CHECK(code_of([&] { weighted_spectrum(square(lopsided, Eigen::VectorXd::Constant(2, 0.5))); }) ==
        ErrorCode::NotSelfAdjoint);
  Eigen::VectorXd bad_pi(2);
  bad_pi << 1.0, 0.0;
  CHECK(code_of([&] { weighted_spectrum(Eigen::MatrixXd::Identity(2, 2), bad_pi); }) == ErrorCode::NonPositivePi);

  const std::vector<double> one = {1.0};
  CHECK(second_eigenvalue(one) == 0.0);
  const std::vector<double> signs = {1.0, 0.25, -0.75};
  CHECK(second_singular_value(signs) == 0.75);
}

TEST_CASE("symmetrized spectrum matches general eigensolver") {
  for (const auto& in : sweep(31, 20)) {
    const auto x = oracle::build(in);
    for (int k = 0; k <= x.dimension(); ++k) {
      if (x.size(k) > 200) continue;
      const auto op = down_up_walk(x, k);
      const auto ev = weighted_spectrum(op);
      const auto ref = oracle::general_eigenvalues(op.matrix);
      REQUIRE(ev.size() == ref.size());
      for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] - ref[i]) <= 1e-9);
      CHECK(std::abs(ev.front() - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("gamma profile examples") {
  // Vertex links of the complete 2-complex on five vertices are K4, the 1-skeleton is K5.
  const auto g = gamma_profile(complete_complex(5, 2));
  CHECK(g.at(-1) == doctest::Approx(-0.25));
  CHECK(g.at(0) == doctest::Approx(-1.0 / 3));
  CHECK(g.at(0) == doctest::Approx(second_eigenvalue(weighted_spectrum(complete_walk(4)))));
  CHECK(g.max() == doctest::Approx(-0.25));
  // Edge links of the complete 3-complex on five vertices are K3.
  CHECK(gamma_profile(complete_complex(5, 3)).at(1) == doctest::Approx(-0.5));
  CHECK_FALSE(g.has(1));
  CHECK(code_of([&] { g.at(1); }) == ErrorCode::LevelOutOfRange);

  const std::vector<Face> apart = {{1, 2}, {3, 4}};
  const auto h = gamma_profile(build_complex(apart));
  CHECK(h.at(-1) == 1.0);
  CHECK(h.level(-1).disconnected == 1);
  CHECK_FALSE(h.level(-1).all_connected());
}

TEST_CASE("gamma profile matches per-link brute force") {
  CounterRng rng(32);
  for (int t = 0; t < 8; ++t) {
    const auto in = oracle::random_facets(rng, 8, 3, 10 + rng.uniform_index(30));
    const auto g = gamma_profile(oracle::build(in));
    const auto ref = oracle::gammas(in);
    const auto got = g.values();
    REQUIRE(got.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(got[i] - ref[i]) <= 1e-9);
  }
}

TEST_CASE("main bound formula") {
  const std::vector<double> zeros(6, 0.0);
  for (int k = 0; k <= 5; ++k) CHECK(main_bound(zeros, k) == doctest::Approx(k / (k + 1.0)));
  CHECK(main_bound({}, 0) == 0.0);
  CHECK(main_bound(std::vector<double>{0.0}, 1) == doctest::Approx(0.5));
  CHECK(code_of([&] { main_bound(std::vector<double>{}, 1); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { main_bound(std::vector<double>{0.0}, 2); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { main_bound(zeros, -1); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { main_bound(std::vector<double>(2, 0.0), 4); }) == ErrorCode::LevelOutOfRange);

  const auto x = complete_complex(6, 3);
  const auto a = check_main(x, 3);
  CHECK(a.passed());
  // The complete complex attains the bound.
  CHECK(a.value == doctest::Approx(a.bound));
  const double actual = oracle::lambda2(down_up_walk(x, 3).matrix);
  CHECK(std::abs(a.value - actual) <= 1e-9);
  CHECK(code_of([&] { check_main(x, 4); }) == ErrorCode::LevelOutOfRange);
  CHECK(check_main(x, 0).bound == 0.0);
}

TEST_CASE("eigenvalue counting") {
  const auto x = complete_complex(6, 3);
  const auto g = gamma_profile(x);
  const auto top = eigencount_check(x, 1, -1, g);
  CHECK(top.cap == 1);
  CHECK(top.pass);
  const double main = main_bound(g.values(), 2);
  CHECK(top.threshold == doctest::Approx(main));

  for (int k = 0; k <= 2; ++k) {
    const auto same = eigencount_check(x, k, k, g);
    CHECK(same.threshold == doctest::Approx((k + 1.0) / (k + 2.0)));
    CHECK(same.cap == x.size(k));
    CHECK(same.pass);
  }
  CHECK(code_of([&] { eigencount_check(x, 3, 0, g); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { eigencount_check(x, 1, 2, g); }) == ErrorCode::LevelOutOfRange);
}

TEST_CASE("operator inequality certificate") {
  const auto x = complete_complex(5, 2);
  CHECK(updownrel_certificate(x, 1, gamma_profile(x)) >= -1e-9);
  CHECK(updownrel_certificate(x, 0, gamma_profile(x)) >= -1e-9);
  CHECK(code_of([&] { updownrel_certificate(x, 2, gamma_profile(x)); }) == ErrorCode::LevelOutOfRange);

  const std::vector<Face> apart = {{1, 2, 3}, {4, 5, 6}};
  const auto y = build_complex(apart);
  const auto gy = gamma_profile(y);
  REQUIRE(gy.at(-1) == 1.0);
  CHECK(updownrel_certificate(y, 0, gy) >= -1e-9);
}

TEST_CASE("trickle-down") {
  CHECK(trickle_down_bound(0.0, 4, -1) == 0.0);
  for (int d = 2; d <= 6; ++d) {
    for (int j = -1; j <= d - 2; ++j) CHECK(trickle_down_bound(1.0 / (d + 1), d, j) == doctest::Approx(1.0 / (j + 3)));
  }
  CHECK(code_of([&] { trickle_down_bound(0.5, 4, -1); }) == ErrorCode::DenominatorNonpositive);
  CHECK(code_of([&] { trickle_down_bound(0.1, 4, 3); }) == ErrorCode::LevelOutOfRange);

  const auto x = complete_complex(7, 3);
  const auto g = gamma_profile(x);
  for (int j = 0; j <= 1; ++j) CHECK(oppenheim_step_check(x, j, g).passed());
}

TEST_CASE("trickle-down step on random complexes") {
  std::size_t asserted = 0;
  for (const auto& in : sweep(33, 30)) {
    const auto x = oracle::build(in);
    const auto g = gamma_profile(x);
    for (int j = 0; j <= x.dimension() - 2; ++j) {
      const auto a = oppenheim_step_check(x, j, g);
      CHECK_FALSE(a.failed());
      asserted += a.passed();
    }
  }
  CHECK(asserted > 0);
}

TEST_CASE("main-cooked bound") {
  const auto x = complete_complex(6, 3);
  const auto g = gamma_profile(x);
  const auto two = main_cooked_check(x, 2, g);
  CHECK(two.bound == doctest::Approx(8.0 / 9.0));
  CHECK(two.passed());
  CHECK(two.value < two.bound);
  const auto zero = main_cooked_check(x, 0, g);
  CHECK(zero.bound == 0.0);
  CHECK(zero.passed());
}

TEST_CASE("long-walk bound") {
  const auto x = complete_complex(7, 3);
  const auto g = gamma_profile(x);
  const auto r01 = long_walk_bound_check(x, 0, 1, 0.0, gamma_profile(complete_complex(7, 3)));
  CHECK(r01.bound == doctest::Approx(0.5));

  const auto r = long_walk_bound_check(x, 0, 2, g.max(), g);
  CHECK(r.bound_check.passed());
  CHECK(r.product_check.passed());
  CHECK(std::abs(r.lambda2 - oracle::lambda2(long_walk(x, 0, 2).matrix)) <= 1e-9);

  // Negative gamma: the one-step bound (1 + gamma)/2 is attained by the complete complex.
  const auto tight = long_walk_bound_check(x, 0, 1, g.max(), g);
  CHECK(tight.bound == doctest::Approx((1.0 + g.max()) / 2.0));
  CHECK(tight.lambda2 == doctest::Approx(tight.bound));
  CHECK(tight.bound_check.passed());

  const double eps = 0.3;
  for (int b = 1; b <= 2; ++b) {
    const auto small = long_walk_bound_check(x, 0, b, eps / b, g);
    CHECK(small.bound <= std::exp(eps) / (b + 1) + 1e-12);
  }
  CHECK(code_of([&] { long_walk_bound_check(x, 0, 3, 0.0, g); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([&] { long_walk_bound_check(x, 1, 1, 0.0, g); }) == ErrorCode::BadRange);
}

TEST_CASE("conductance and nonexpansion") {
  const auto w = down_up_walk(complete_complex(6, 2), 2);
  std::vector<std::size_t> all(w.matrix.rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  CHECK(conductance(w, all) == doctest::Approx(0.0));
  CHECK(code_of([&] { conductance(w, std::vector<std::size_t>{}); }) == ErrorCode::InvalidArgument);

  const auto r = nonexp_check(complete_complex(8, 3));
  CHECK(r.lambda_check.passed());
  CHECK(r.lambda_check.bound == doctest::Approx(0.5));
  CHECK(r.lambda2 >= 0.5 - 1e-9);
  CHECK(r.star_check.passed());
  CHECK(r.star_conductance <= 0.25 + 1e-9);
  CHECK(code_of([&] { nonexp_check(complete_complex(7, 3)); }) == ErrorCode::HypothesisNotMet);
}

TEST_CASE("cheeger on small walks") {
  const auto k3 = cheeger_check(complete_walk(3));
  CHECK(k3.exhaustive);
  CHECK(k3.lambda2 == doctest::Approx(-0.5));
  CHECK(k3.conductance == doctest::Approx(1.0));
  CHECK(k3.lower_check.passed());
  CHECK(k3.upper_check.passed());
  // The tighter constant sqrt((1 - lambda_2)/2) is below the measured conductance here.
  CHECK(k3.conductance > std::sqrt((1.0 - k3.lambda2) / 2.0));

  const auto big = down_up_walk(complete_complex(7, 2), 2);
  const auto stars = vertex_stars(complete_complex(7, 2), 2);
  const auto c = cheeger_check(big, stars);
  CHECK_FALSE(c.exhaustive);
  CHECK(c.lower_check.passed());
  CHECK(c.upper_check.status == Status::Skipped);

  CounterRng rng(34);
  for (int t = 0; t < 10; ++t) {
    const auto x = oracle::build(oracle::random_facets(rng, 6, 1, 6 + rng.uniform_index(8)));
    const auto r = cheeger_check(down_up_walk(x, 1));
    CHECK_FALSE(r.lower_check.failed());
    CHECK_FALSE(r.upper_check.failed());
  }
}

TEST_CASE("mixing-time budget") {
  CHECK(mixing_time_budget(0.5, 0.01, 0.01) == 19);
  CHECK(mixing_time_budget(0.0, 0.01, 0.01) == static_cast<std::uint64_t>(std::ceil(std::log(1e4))));
  for (int k = 2; k <= 4; ++k) {
    for (int n : {8, 20, 36}) {
      const double eps = 0.05;
      const auto b = mixing_time_budget(1.0 - 1.0 / (k * k), std::pow(n, -k), eps);
      CHECK(static_cast<double>(b) <= std::ceil(k * k * (std::log(1 / eps) + k * std::log(n))));
    }
  }
  CHECK(code_of([] { mixing_time_budget(1.0, 0.5, 0.1); }) == ErrorCode::GapZero);
  CHECK(code_of([] { mixing_time_budget(0.5, 0.0, 0.1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { mixing_time_budget(0.5, 0.5, 1.5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("disconnected vertex link with a connected top walk") {
  // Vertex 9 sees two disjoint edges, so gamma_0 = 1, yet the triangles form one gallery.
  const std::vector<Face> f = {{1, 2, 9}, {1, 2, 6}, {2, 3, 6}, {2, 3, 4}, {3, 4, 9}};
  const auto x = build_complex(f);
  const auto g = gamma_profile(x);
  CHECK(g.at(0) == 1.0);
  CHECK(g.level(0).argmax == Face{9});
  CHECK(g.at(-1) < 1.0);
  const double l2 = second_eigenvalue(weighted_spectrum(down_up_walk(x, 2)));
  CHECK(l2 < 1.0 - 1e-9);
  CHECK(std::abs(l2 - oracle::lambda2(down_up_walk(x, 2).matrix)) <= 1e-9);
}

TEST_CASE("spectral bounds over random complexes") {
  std::size_t gallery = 0;
  for (const auto& in : sweep(35, 36)) {
    const auto x = oracle::build(in);
    const auto g = gamma_profile(x);
    const int d = x.dimension();
    for (int k = 0; k <= d; ++k) {
      const auto a = check_main(x, k, g);
      CHECK(a.passed());
      const auto ev = weighted_spectrum(down_up_walk(x, k));
      CHECK(std::abs(second_singular_value(ev) - second_eigenvalue(ev)) <= 1e-9);
    }
    for (int k = 0; k < d; ++k) {
      CHECK(updownrel_certificate(x, k, g) >= -1e-9);
      const auto upw = weighted_spectrum(up_down_walk(x, k));
      for (int r = -1; r <= k; ++r) CHECK(eigencount_check(x, k, r, g, upw).pass);
    }
    bool all_below = true;
    for (double v : g.values()) all_below = all_below && v < 1.0 - 1e-9;
    if (all_below) {
      ++gallery;
      CHECK(second_eigenvalue(weighted_spectrum(down_up_walk(x, d))) < 1.0 - 1e-9);
    }
  }
  CHECK(gallery > 0);
}

TEST_CASE("analysis report") {
  const auto x = complete_complex(6, 3);
  const auto rep = analyze(x);
  CHECK(rep.tally().fail == 0);
  CHECK(rep.tally().pass > 0);
  CHECK(rep.levels.size() == 4);

  AnalysisOptions one;
  one.level = 2;
  one.only = {"main-bound"};
  const auto r2 = analyze(x, one);
  REQUIRE(r2.levels.size() == 1);
  CHECK(r2.levels[0].k == 2);
  CHECK(r2.trickle_down.empty());
  CHECK(r2.long_walks.empty());
  for (const auto& a : r2.assertions()) CHECK(a.name.find("main_bound") != std::string::npos);

  AnalysisOptions bogus;
  bogus.only = {"nope"};
  CHECK(code_of([&] { analyze(x, bogus); }) == ErrorCode::InvalidArgument);
  AnalysisOptions far;
  far.level = 9;
  CHECK(code_of([&] { analyze(x, far); }) == ErrorCode::LevelOutOfRange);

  CHECK(json_text(to_json(rep)) == json_text(to_json(analyze(x))));
  const auto j = to_json(Assertion::check("t", 0.5, Relation::AtLeast, 0.25));
  CHECK(j["relation"] == ">=");
  CHECK(j["pass"] == true);
  CHECK(json_number(std::numeric_limits<double>::infinity()) == "unbounded");
  CHECK(json_number(std::nan("")).is_null());
}
