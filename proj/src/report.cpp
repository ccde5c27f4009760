#include "hodgewalk/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hodgewalk/error.hpp"
#include "hodgewalk/json_text.hpp"
#include "hodgewalk/rng.hpp"

namespace hodgewalk {

const std::vector<std::string>& analysis_check_names() {
  static const std::vector<std::string> names{
      "stochastic", "main-bound", "spectrum-equality", "adjointness", "garland",
      "eigencount", "updownrel",  "main-cooked",       "mixing",      "trickle-down",
      "long-walk",  "nonexp",     "cheeger"};
  return names;
}

bool AnalysisOptions::enabled(const std::string& check) const {
  return only.empty() || std::find(only.begin(), only.end(), check) != only.end();
}

namespace {

std::string at_k(const char* name, int k) { return std::string(name) + "[k=" + std::to_string(k) + "]"; }

/// Max elementwise gap between two PSD spectra after zero-padding the shorter one.
double padded_spectrum_gap(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
  return gap;
}

LevelReport analyze_level(const WeightedComplex& x, int k, const GammaProfile& gamma,
                          const AnalysisOptions& opts) {
  const int d = x.dimension();
  LevelReport lr;
  lr.k = k;
  lr.faces = x.size(k);
  const WeightedOperator walk = down_up_walk(x, k, opts.operators);
  lr.eigenvalues = weighted_spectrum(walk);
  lr.lambda2 = second_eigenvalue(lr.eigenvalues);
  lr.sigma2 = second_singular_value(lr.eigenvalues);
  lr.main_bound = main_bound(gamma.values(), k);
  const auto pi = x.pi(k);
  lr.pi_min = *std::min_element(pi.begin(), pi.end());

  if (opts.enabled("stochastic")) {
    lr.checks.push_back(Assertion::check(at_k("row_sums", k), walk.row_sum_residual(), Relation::AtMost, 0.0));
    lr.checks.push_back(Assertion::check(at_k("lambda1", k), std::abs(lr.eigenvalues.front() - 1.0),
                                         Relation::AtMost, 0.0));
  }
  if (opts.enabled("main-bound")) {
    lr.checks.push_back(Assertion::check(at_k("main_bound", k), lr.lambda2, Relation::AtMost, lr.main_bound));
  }
  if (k >= 1 && opts.enabled("spectrum-equality")) {
    const auto up = weighted_spectrum(up_down_walk(x, k - 1, opts.operators));
    lr.checks.push_back(Assertion::check(at_k("spectrum_equality", k),
                                         padded_spectrum_gap(lr.eigenvalues, up), Relation::AtMost, 0.0));
  }
  if (k >= 1 && opts.enabled("adjointness")) {
    lr.checks.push_back(Assertion::check(at_k("adjointness", k), adjointness_residual(x, k - 1, opts.operators),
                                         Relation::AtMost, 0.0, kDistributionTolerance));
  }
  if (k >= 1 && opts.enabled("garland")) {
    CounterRng rng(opts.seed, static_cast<std::uint64_t>(k) << 40);
    double worst = 0.0;
    Eigen::VectorXd f(static_cast<Eigen::Index>(lr.faces));
    for (int t = 0; t < opts.garland_vectors; ++t) {
      for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = 2.0 * rng.uniform01() - 1.0;
      worst = std::max(worst, garland_terms(x, k, f, opts.operators).max_discrepancy());
    }
    lr.checks.push_back(Assertion::check(at_k("garland", k), worst, Relation::AtMost, 0.0, 1e-10));
  }
  if (k <= d - 1 && opts.enabled("eigencount")) {
    const auto upw = weighted_spectrum(up_down_walk(x, k, opts.operators));
    for (int r = -1; r <= k; ++r) {
      const EigencountResult ec = eigencount_check(x, k, r, gamma, upw);
      lr.eigencounts.push_back(ec);
      lr.checks.push_back(Assertion::check("eigencount[k=" + std::to_string(k) + ",r=" + std::to_string(r) + "]",
                                           static_cast<double>(ec.count), Relation::AtMost,
                                           static_cast<double>(ec.cap), 0.0));
    }
  }
  if (k <= d - 1 && opts.enabled("updownrel")) {
    lr.certificate = updownrel_certificate(x, k, gamma, opts.operators);
    lr.checks.push_back(Assertion::check(at_k("updownrel", k), *lr.certificate, Relation::AtLeast, 0.0));
  }
  if (opts.enabled("main-cooked")) lr.checks.push_back(main_cooked_check(x, k, gamma, opts.operators));
  if (opts.enabled("mixing") && lr.sigma2 < 1.0 - kSpectralTolerance) {
    lr.mixing_budget = mixing_time_budget(std::max(0.0, lr.sigma2), lr.pi_min, opts.eps);
  }
  return lr;
}

}  // namespace

SpectralReport analyze(const WeightedComplex& x, const AnalysisOptions& opts) {
  for (const auto& name : opts.only) {
    const auto& known = analysis_check_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw Error(ErrorCode::InvalidArgument, "unknown check '" + name + "'");
    }
  }
  const int d = x.dimension();
  if (opts.level && (*opts.level < 0 || *opts.level > d)) {
    throw Error(ErrorCode::LevelOutOfRange, "level must be in [0, " + std::to_string(d) + "]");
  }

  SpectralReport rep;
  rep.dimension = d;
  for (int j = -1; j <= d; ++j) rep.level_sizes.push_back(x.size(j));
  rep.gamma = gamma_profile(x);

  for (int k = 0; k <= d; ++k) {
    if (opts.level && *opts.level != k) continue;
    rep.levels.push_back(analyze_level(x, k, rep.gamma, opts));
  }
  if (opts.level) return rep;

  if (opts.enabled("trickle-down")) {
    for (int j = 0; j <= d - 2; ++j) rep.trickle_down.push_back(oppenheim_step_check(x, j, rep.gamma));
  }
  if (opts.enabled("long-walk")) {
    const double g = rep.gamma.max();
    for (int a = 0; a <= d - 1; ++a) {
      for (int b = a + 1; b <= d - 1; ++b) {
        rep.long_walks.push_back(long_walk_bound_check(x, a, b, g, rep.gamma, opts.operators));
      }
    }
  }
  if (opts.enabled("nonexp")) {
    try {
      rep.nonexp = nonexp_check(x, opts.operators);
      rep.conductance.push_back(rep.nonexp->lambda_check);
      rep.conductance.push_back(rep.nonexp->star_check);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HypothesisNotMet) throw;
      rep.conductance.push_back(Assertion::skipped("nonexp", e.what()));
    }
  }
  if (opts.enabled("cheeger") && d >= 0) {
    const auto stars = vertex_stars(x, d);
    rep.cheeger = cheeger_check(down_up_walk(x, d, opts.operators), stars);
    rep.conductance.push_back(rep.cheeger->lower_check);
    rep.conductance.push_back(rep.cheeger->upper_check);
  }
  return rep;
}

std::vector<Assertion> SpectralReport::assertions() const {
  std::vector<Assertion> out;
  for (const auto& l : levels) out.insert(out.end(), l.checks.begin(), l.checks.end());
  out.insert(out.end(), trickle_down.begin(), trickle_down.end());
  for (const auto& lw : long_walks) {
    out.push_back(lw.bound_check);
    out.push_back(lw.product_check);
  }
  out.insert(out.end(), conductance.begin(), conductance.end());
  return out;
}

Tally SpectralReport::tally() const {
  Tally t;
  for (const auto& a : assertions()) {
    switch (a.status) {
      case Status::Pass: ++t.pass; break;
      case Status::Fail: ++t.fail; break;
      case Status::Skipped: ++t.skipped; break;
    }
  }
  return t;
}

namespace {

nlohmann::json face_json(const Face& f) { return nlohmann::json(f.vertices()); }

}  // namespace

nlohmann::json to_json(const Assertion& a) {
  nlohmann::json j;
  j["name"] = a.name;
  j["value"] = json_number(a.value);
  j["bound"] = json_number(a.bound);
  j["relation"] = a.relation == Relation::AtMost ? "<=" : ">=";
  j["tolerance"] = a.tolerance;
  j["status"] = std::string(to_string(a.status));
  j["pass"] = a.status != Status::Fail;
  if (!a.note.empty()) j["note"] = a.note;
  return j;
}

nlohmann::json to_json(const GammaProfile& g) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& l : g.levels) {
    arr.push_back({{"level", l.level},
                   {"gamma", l.gamma},
                   {"argmax", face_json(l.argmax)},
                   {"links", l.links},
                   {"disconnected_links", l.disconnected}});
  }
  return arr;
}

nlohmann::json to_json(const Tally& t) {
  return {{"pass", t.pass}, {"fail", t.fail}, {"skipped", t.skipped}, {"ok", t.fail == 0}};
}

nlohmann::json to_json(const SpectralReport& r) {
  nlohmann::json j;
  j["dimension"] = r.dimension;
  j["level_sizes"] = r.level_sizes;
  j["gamma"] = to_json(r.gamma);

  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) {
    nlohmann::json lj;
    lj["k"] = l.k;
    lj["faces"] = l.faces;
    lj["eigenvalues"] = l.eigenvalues;
    lj["lambda2"] = l.lambda2;
    lj["sigma2"] = l.sigma2;
    lj["main_bound"] = l.main_bound;
    lj["pi_min"] = l.pi_min;
    lj["certificate"] = l.certificate ? nlohmann::json(*l.certificate) : nlohmann::json(nullptr);
    lj["mixing_budget"] = l.mixing_budget ? nlohmann::json(*l.mixing_budget) : nlohmann::json("unbounded");
    nlohmann::json ec = nlohmann::json::array();
    for (const auto& e : l.eigencounts) {
      ec.push_back({{"r", e.r}, {"threshold", e.threshold}, {"count", e.count}, {"cap", e.cap}, {"pass", e.pass}});
    }
    lj["eigencount"] = ec;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& a : l.checks) checks.push_back(to_json(a));
    lj["checks"] = checks;
    levels.push_back(lj);
  }
  j["levels"] = levels;

  nlohmann::json td = nlohmann::json::array();
  for (const auto& a : r.trickle_down) td.push_back(to_json(a));
  j["trickle_down"] = td;

  nlohmann::json lw = nlohmann::json::array();
  for (const auto& w : r.long_walks) {
    lw.push_back({{"a", w.a},
                  {"b", w.b},
                  {"gamma", w.gamma},
                  {"bound", w.bound},
                  {"lambda2", w.lambda2},
                  {"sigma2", w.sigma2},
                  {"product_bound", w.product_bound},
                  {"checks", {to_json(w.bound_check), to_json(w.product_check)}}});
  }
  j["long_walks"] = lw;

  nlohmann::json cond;
  if (r.nonexp) {
    cond["nonexp"] = {{"vertex", r.nonexp->vertex},
                      {"star_measure", r.nonexp->star_measure},
                      {"star_conductance", r.nonexp->star_conductance},
                      {"lambda2", r.nonexp->lambda2}};
  }
  if (r.cheeger) {
    const double gap = 1.0 - r.cheeger->lambda2;
    cond["cheeger"] = {{"lambda2", r.cheeger->lambda2},
                       {"conductance", json_number(r.cheeger->conductance)},
                       {"exhaustive", r.cheeger->exhaustive},
                       {"minimizer_size", r.cheeger->minimizer.size()},
                       {"sqrt_half_gap", std::sqrt(std::max(0.0, gap) / 2.0)}};
  }
  nlohmann::json cchecks = nlohmann::json::array();
  for (const auto& a : r.conductance) cchecks.push_back(to_json(a));
  cond["checks"] = cchecks;
  j["conductance"] = cond;
  j["summary"] = to_json(r.tally());
  return j;
}

}  // namespace hodgewalk
