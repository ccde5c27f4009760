#include "hodgewalk/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "hodgewalk/builders.hpp"
#include "hodgewalk/facet_io.hpp"
#include "hodgewalk/generators.hpp"
#include "hodgewalk/json_text.hpp"
#include "hodgewalk/sampler.hpp"

namespace hodgewalk::cli {

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::LevelOutOfRange:
    case ErrorCode::BadRange:
    case ErrorCode::NoBudget:
      return kParse;
    case ErrorCode::CapExceeded:
    case ErrorCode::TooLarge:
      return kResourceCap;
    default:
      return kStructure;
  }
}

std::size_t dense_cap(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HODGEWALK_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw Error(ErrorCode::ParseError, "HODGEWALK_CAP must be an integer");
    return static_cast<std::size_t>(v);
  }
  return kDefaultDenseCap;
}

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) { EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr); }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const void* data, std::size_t n) { EVP_DigestUpdate(ctx_, data, n); }

  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md, &len);
    std::ostringstream os;
    os << "sha256:";
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
  }

 private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string input_digest(std::span<const std::filesystem::path> files) {
  Sha256 sha;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + f.string());
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) sha.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return sha.hex();
}

std::string text_digest(std::string_view text) {
  Sha256 sha;
  sha.update(text.data(), text.size());
  return sha.hex();
}

nlohmann::json RunReport::to_json() const {
  return {{"tool", "hodgewalk"},
          {"version", std::string(kToolVersion)},
          {"command", command},
          {"arguments", arguments},
          {"input_digest", input_digest},
          {"result", result},
          {"summary", hodgewalk::to_json(tally)}};
}

namespace {

Tally merge(Tally a, const Tally& b) {
  a.pass += b.pass;
  a.fail += b.fail;
  a.skipped += b.skipped;
  return a;
}

nlohmann::json complex_summary(const WeightedComplex& x) {
  std::vector<std::size_t> sizes;
  for (int j = -1; j <= x.dimension(); ++j) sizes.push_back(x.size(j));
  return {{"dimension", x.dimension()}, {"level_sizes", sizes}};
}

struct LoadedTarget {
  std::vector<std::filesystem::path> files;
  std::optional<Graph> graph;
  std::optional<PartitionMatroid> m1;
  std::optional<PartitionMatroid> m2;
};

LoadedTarget load_target(const TargetArgs& t) {
  LoadedTarget lt;
  if (t.kind == "is") {
    if (t.graph.empty()) throw Error(ErrorCode::InvalidArgument, "'is' needs --graph");
    lt.graph = read_graph(t.graph);
    lt.files = {t.graph};
  } else if (t.kind == "mi") {
    if (t.m1.empty() || t.m2.empty()) throw Error(ErrorCode::InvalidArgument, "'mi' needs --m1 and --m2");
    lt.m1 = read_matroid(t.m1);
    lt.m2 = read_matroid(t.m2);
    lt.files = {t.m1, t.m2};
  } else {
    throw Error(ErrorCode::InvalidArgument, "kind must be 'is' or 'mi', got '" + t.kind + "'");
  }
  if (t.k < 1) throw Error(ErrorCode::InvalidArgument, "--k must be at least 1");
  return lt;
}

nlohmann::json target_arguments(const TargetArgs& t) {
  nlohmann::json j{{"kind", t.kind}, {"k", t.k}};
  if (t.kind == "is") j["graph"] = t.graph.string();
  if (t.kind == "mi") {
    j["m1"] = t.m1.string();
    j["m2"] = t.m2.string();
  }
  return j;
}

}  // namespace

RunReport cmd_spectrum(const SpectrumArgs& args) {
  RunReport rep;
  rep.command = "spectrum";
  rep.arguments = {{"file", args.file.string()}, {"seed", args.seed}};
  if (args.level) rep.arguments["level"] = *args.level;
  if (!args.only.empty()) rep.arguments["only"] = args.only;
  const std::vector<std::filesystem::path> files{args.file};
  rep.input_digest = input_digest(files);

  const WeightedComplex x = load_complex(args.file);
  AnalysisOptions opts;
  opts.level = args.level;
  opts.only = args.only;
  opts.operators.cap = dense_cap(args.cap);
  opts.seed = args.seed;
  opts.garland_vectors = args.garland_vectors;
  opts.eps = args.eps;
  const SpectralReport sr = analyze(x, opts);
  rep.result = to_json(sr);
  rep.tally = sr.tally();
  return rep;
}

RunReport cmd_build(const BuildArgs& args) {
  RunReport rep;
  rep.command = "build";
  rep.arguments = target_arguments(args.target);
  if (args.out) rep.arguments["out"] = args.out->string();
  const LoadedTarget lt = load_target(args.target);
  rep.input_digest = input_digest(lt.files);
  OperatorOptions ops;
  ops.cap = dense_cap(args.target.cap);
  const int k = args.target.k;

  WeightedComplex x = lt.graph ? independent_set_complex(*lt.graph, k)
                               : matroid_intersection_complex(*lt.m1, *lt.m2, k);
  if (args.out) {
    std::ofstream out(*args.out);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + args.out->string());
    write_facets(out, x);
  }
  const StructuralReport sr = lt.graph ? is_link_checks(x, *lt.graph, k, ops) : mi_link_checks(x, *lt.m1, *lt.m2, k, ops);
  rep.result = {{"complex", complex_summary(x)}, {"lemmas", to_json(sr)}};
  rep.tally = sr.tally();
  return rep;
}

RunReport cmd_sample(const SampleArgs& args) {
  RunReport rep;
  rep.command = "sample";
  rep.arguments = target_arguments(args.target);
  rep.arguments["seed"] = args.seed;
  rep.arguments["eps"] = args.eps;
  rep.arguments["samples"] = args.samples;
  rep.arguments["thin"] = args.thin;
  if (args.burnin) rep.arguments["burnin"] = *args.burnin;
  const LoadedTarget lt = load_target(args.target);
  rep.input_digest = input_digest(lt.files);
  const int k = args.target.k;
  const std::size_t cap = dense_cap(args.target.cap);

  const SamplingTarget target = lt.graph ? SamplingTarget::independent_sets(*lt.graph, k)
                                         : SamplingTarget::matroid_intersection(*lt.m1, *lt.m2, k);
  const double n = static_cast<double>(target.elements().size());

  nlohmann::json budget;
  std::uint64_t burnin = 0;
  if (args.burnin) {
    burnin = *args.burnin;
    budget = {{"source", "explicit"}, {"steps", burnin}};
  } else {
    bool theorem = false;
    std::string why;
    if (lt.graph) {
      const SamplingCondition c = is_sampling_condition(*lt.graph, k);
      theorem = c.pass;
      why = "k > n/(max_degree+|lambda_min|)";
    } else {
      const std::size_t r = max_common_independent(*lt.m1, *lt.m2);
      theorem = 3.0 * k <= static_cast<double>(r) && !shared_block_pair(*lt.m1, *lt.m2);
      why = "k > r/3 or a shared block pair";
    }
    if (theorem) {
      const double sigma2 = 1.0 - 1.0 / (static_cast<double>(k) * k);
      const double pi_min = std::pow(n, -k);
      burnin = mixing_time_budget(sigma2, pi_min, args.eps);
      budget = {{"source", "theorem"}, {"sigma2", sigma2}, {"pi_min", pi_min}, {"steps", burnin}};
    } else {
      std::optional<WeightedComplex> x;
      try {
        x = lt.graph ? independent_set_complex(*lt.graph, k) : matroid_intersection_complex(*lt.m1, *lt.m2, k);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLarge) throw;
      }
      if (!x || x->size(k - 1) > cap) {
        throw Error(ErrorCode::NoBudget, why + " and the top level is too large to solve; pass --burnin");
      }
      const double sigma2 = second_singular_value(weighted_spectrum(down_up_walk(*x, k - 1, {cap})));
      if (sigma2 >= 1.0 - kSpectralTolerance) {
        throw Error(ErrorCode::NoBudget, "the down-up walk is not irreducible (sigma_2 = 1); pass --burnin");
      }
      const double pi_min = 1.0 / static_cast<double>(x->size(k - 1));
      burnin = mixing_time_budget(std::max(0.0, sigma2), pi_min, args.eps);
      budget = {{"source", "eigensolve"}, {"sigma2", sigma2}, {"pi_min", pi_min}, {"steps", burnin}};
    }
  }

  std::ofstream trace_out;
  SamplerConfig cfg;
  cfg.seed = args.seed;
  cfg.burnin = burnin;
  cfg.samples = args.samples;
  cfg.thin = args.thin;
  if (args.trace) {
    trace_out.open(*args.trace);
    if (!trace_out) throw Error(ErrorCode::InvalidArgument, "cannot write " + args.trace->string());
    cfg.trace = &trace_out;
  }
  const ChainTrace trace = run_chain(target, cfg);

  nlohmann::json result{{"seed", trace.seed},
                        {"steps", trace.steps},
                        {"recorded", trace.recorded},
                        {"budget", budget},
                        {"initial_state", trace.initial},
                        {"final_state", trace.final_state},
                        {"distinct_states_visited", trace.visits.size()}};
  try {
    const auto exact = exact_enumeration(target);
    result["states"] = exact.size();
    result["tv"] = tv_distance(trace, exact);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    result["states"] = nullptr;
    result["tv"] = nullptr;
  }
  Assertion valid = Assertion::check("final_state_valid", target.valid(trace.final_state) ? 1.0 : 0.0,
                                     Relation::AtLeast, 1.0, 0.0);
  result["checks"] = nlohmann::json::array({to_json(valid)});
  rep.result = result;
  rep.tally.pass = valid.passed();
  rep.tally.fail = valid.failed();
  return rep;
}

namespace {

nlohmann::json instance(const std::string& name, const nlohmann::json& body, const Tally& t) {
  return {{"name", name}, {"summary", to_json(t)}, {"detail", body}};
}

}  // namespace

RunReport cmd_verify(std::uint64_t seed, std::optional<std::size_t> cap) {
  RunReport rep;
  rep.command = "verify";
  rep.arguments = {{"suite", "all"}, {"seed", seed}};
  rep.input_digest = text_digest("builtin-sweep:" + std::to_string(seed));
  AnalysisOptions opts;
  opts.operators.cap = dense_cap(cap);
  opts.seed = seed;
  nlohmann::json instances = nlohmann::json::array();

  auto run_complex = [&](const std::string& name, const WeightedComplex& x) {
    const SpectralReport sr = analyze(x, opts);
    const Tally t = sr.tally();
    rep.tally = merge(rep.tally, t);
    std::vector<nlohmann::json> failures;
    for (const auto& a : sr.assertions()) {
      if (a.failed()) failures.push_back(to_json(a));
    }
    instances.push_back(instance(name, {{"gamma", to_json(sr.gamma)}, {"failures", failures}}, t));
  };

  for (auto [n, d] : {std::pair{5, 2}, {6, 3}, {7, 2}, {8, 3}}) {
    run_complex("complete n=" + std::to_string(n) + " d=" + std::to_string(d), complete_complex(n, d));
  }
  CounterRng rng(seed);
  for (int i = 0; i < 8; ++i) {
    const int n = 5 + static_cast<int>(rng.uniform_index(4));
    const int d = 1 + static_cast<int>(rng.uniform_index(3));
    const std::size_t facets = 4 + rng.uniform_index(12);
    run_complex("random #" + std::to_string(i) + " n=" + std::to_string(n) + " d=" + std::to_string(d),
                random_pure_complex(rng, n, d, facets));
  }

  auto run_structural = [&](const std::string& name, const StructuralReport& sr) {
    const Tally t = sr.tally();
    rep.tally = merge(rep.tally, t);
    instances.push_back(instance(name, to_json(sr), t));
  };
  run_structural("is empty n=6 k=3", is_link_checks(empty_graph(6), 3, opts.operators));
  run_structural("is star K_{1,4} + 9 isolated k=2",
                 is_link_checks(disjoint_union(star_graph(4), empty_graph(9)), 2, opts.operators));
  run_structural("is path n=5 k=2", is_link_checks(path_graph(5), 2, opts.operators));
  {
    const auto [r3, c3] = grid_matroids(3, 3);
    run_structural("mi grid 3x3 k=2", mi_link_checks(r3, c3, 2, opts.operators));
    const auto [r6, c6] = grid_matroids(6, 6);
    run_structural("mi grid 6x6 k=2", mi_link_checks(r6, c6, 2, opts.operators));
  }

  // C4 with k = 2 must fail the sampling condition and freeze the walk.
  {
    const Graph c4 = cycle_graph(4);
    const SamplingCondition cond = is_sampling_condition(c4, 2);
    const WeightedComplex x = independent_set_complex(c4, 2);
    const double l2 = second_eigenvalue(weighted_spectrum(down_up_walk(x, 1)));
    std::vector<Assertion> checks{
        Assertion::check("condition_rejects", cond.pass ? 1.0 : 0.0, Relation::AtMost, 0.0, 0.0),
        Assertion::check("frozen_lambda2", l2, Relation::AtLeast, 1.0)};
    Tally t;
    nlohmann::json cj = nlohmann::json::array();
    for (const auto& a : checks) {
      (a.passed() ? t.pass : t.fail) += 1;
      cj.push_back(to_json(a));
    }
    rep.tally = merge(rep.tally, t);
    instances.push_back(instance("negative control C4 k=2", {{"checks", cj}, {"threshold", cond.threshold}}, t));
  }
  rep.result = {{"instances", instances}};
  return rep;
}

void cmd_export(const ExportArgs& args, std::ostream& os) {
  const WeightedComplex x = load_complex(args.file);
  const OperatorOptions ops{dense_cap(args.cap)};
  WeightedOperator op;
  if (args.op == "up") {
    op = up_operator(x, args.j, ops);
  } else if (args.op == "down") {
    op = down_operator(x, args.j, ops);
  } else if (args.op == "downup") {
    op = down_up_walk(x, args.j, ops);
  } else if (args.op == "updown") {
    op = up_down_walk(x, args.j, ops);
  } else if (args.op == "nonlazy") {
    op = nonlazy_up_down_walk(x, args.j, ops);
  } else if (args.op == "long") {
    op = long_walk(x, args.j, args.b, ops);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown operator '" + args.op + "'");
  }
  write_matrix(os, op.matrix);
}

}  // namespace hodgewalk::cli
