#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/operators.hpp"
#include "hodgewalk/spectral.hpp"

namespace hodgewalk {

/// Names accepted by `AnalysisOptions::only`.
const std::vector<std::string>& analysis_check_names();

struct AnalysisOptions {
  std::optional<int> level;        // restrict per-level sections to this k; drops global sections
  std::vector<std::string> only;   // empty runs every check
  OperatorOptions operators;
  int garland_vectors = 10;
  std::uint64_t seed = 1;
  double eps = 0.05;

  bool enabled(const std::string& check) const;
};

struct LevelReport {
  int k = 0;
  std::size_t faces = 0;
  std::vector<double> eigenvalues;  // DownW_k, descending
  double lambda2 = 0.0;
  double sigma2 = 0.0;
  double main_bound = 0.0;
  double pi_min = 0.0;
  std::optional<double> certificate;
  std::optional<std::uint64_t> mixing_budget;
  std::vector<EigencountResult> eigencounts;
  std::vector<Assertion> checks;
};

struct Tally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
};

struct SpectralReport {
  int dimension = -1;
  std::vector<std::size_t> level_sizes;  // index j+1
  GammaProfile gamma;
  std::vector<LevelReport> levels;
  std::vector<Assertion> trickle_down;
  std::vector<LongWalkResult> long_walks;
  std::optional<NonExpansionResult> nonexp;
  std::optional<CheegerResult> cheeger;
  std::vector<Assertion> conductance;

  std::vector<Assertion> assertions() const;
  Tally tally() const;
};

SpectralReport analyze(const WeightedComplex& x, const AnalysisOptions& opts = {});

nlohmann::json to_json(const Assertion& a);
nlohmann::json to_json(const GammaProfile& g);
nlohmann::json to_json(const SpectralReport& r);
nlohmann::json to_json(const Tally& t);

}  // namespace hodgewalk
