// Command-line front end: spectrum, build, sample, verify, export.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hodgewalk/commands.hpp"
#include "hodgewalk/json_text.hpp"

namespace cli = hodgewalk::cli;

namespace {

int emit(const cli::RunReport& rep, const std::string& out) {
  const nlohmann::json j = rep.to_json();
  if (out.empty()) {
    hodgewalk::write_json(std::cout, j);
  } else {
    std::ofstream f(out);
    if (!f) throw hodgewalk::Error(hodgewalk::ErrorCode::InvalidArgument, "cannot write " + out);
    hodgewalk::write_json(f, j);
  }
  const auto& t = rep.tally;
  std::cerr << rep.command << ": " << t.pass << " passed, " << t.fail << " failed, " << t.skipped << " skipped\n";
  return rep.exit_code();
}

void add_target_options(CLI::App* sub, cli::TargetArgs& t) {
  sub->add_option("kind", t.kind, "is | mi")->required()->check(CLI::IsMember({"is", "mi"}));
  sub->add_option("--graph", t.graph, "graph file (is)");
  sub->add_option("--m1", t.m1, "first partition matroid JSON (mi)");
  sub->add_option("--m2", t.m2, "second partition matroid JSON (mi)");
  sub->add_option("--k", t.k, "face size")->required();
  sub->add_option("--cap", t.cap, "dense operator cap (overrides HODGEWALK_CAP)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of down-up walks on weighted simplicial complexes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cli::kToolVersion));
  std::string out;

  cli::SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "analyse a facet file");
  sp->add_option("file", spectrum.file, "facet file")->required();
  sp->add_option("--level", spectrum.level, "restrict to DownW_k for this k");
  sp->add_option("--only", spectrum.only, "run only these checks")->delimiter(',');
  sp->add_option("--cap", spectrum.cap, "dense operator cap (overrides HODGEWALK_CAP)");
  sp->add_option("--seed", spectrum.seed, "seed for the random test vectors");
  sp->add_option("--garland-vectors", spectrum.garland_vectors, "random vectors per level")->check(CLI::PositiveNumber);
  sp->add_option("--eps", spectrum.eps, "target distance for mixing budgets")->check(CLI::Range(0.0, 1.0));
  sp->add_option("--out", out, "report file (default stdout)");

  cli::BuildArgs build;
  std::string facets;
  auto* bd = app.add_subcommand("build", "build an independent-set or matroid-intersection complex");
  add_target_options(bd, build.target);
  bd->add_option("--facets", facets, "write the complex as a facet file");
  bd->add_option("--out", out, "report file (default stdout)");

  cli::SampleArgs sample;
  std::string trace;
  auto* sa = app.add_subcommand("sample", "run the down-up walk");
  add_target_options(sa, sample.target);
  sa->add_option("--seed", sample.seed, "chain seed");
  sa->add_option("--eps", sample.eps, "target l1 distance for the automatic burn-in")->check(CLI::Range(0.0, 1.0));
  sa->add_option("--burnin", sample.burnin, "explicit burn-in steps");
  sa->add_option("--samples", sample.samples, "recorded samples");
  sa->add_option("--thin", sample.thin, "steps between samples")->check(CLI::PositiveNumber);
  sa->add_option("--trace", trace, "write '<step> <state>' lines");
  sa->add_option("--out", out, "report file (default stdout)");

  std::string suite;
  std::uint64_t verify_seed = 1;
  std::optional<std::size_t> verify_cap;
  auto* vf = app.add_subcommand("verify", "run the built-in check sweep");
  vf->add_option("suite", suite, "all")->required()->check(CLI::IsMember({"all"}));
  vf->add_option("--seed", verify_seed, "seed for the random instances");
  vf->add_option("--cap", verify_cap, "dense operator cap (overrides HODGEWALK_CAP)");
  vf->add_option("--out", out, "report file (default stdout)");

  cli::ExportArgs exp;
  auto* ex = app.add_subcommand("export", "write one operator as a dense matrix");
  ex->add_option("file", exp.file, "facet file")->required();
  ex->add_option("--op", exp.op, "up | down | downup | updown | nonlazy | long")->required();
  ex->add_option("--j", exp.j, "level (for long: a)");
  ex->add_option("--b", exp.b, "upper level of the long walk");
  ex->add_option("--cap", exp.cap, "dense operator cap (overrides HODGEWALK_CAP)");
  ex->add_option("--out", out, "matrix file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kParse;
  }

  try {
    if (*sp) return emit(cli::cmd_spectrum(spectrum), out);
    if (*bd) {
      if (!facets.empty()) build.out = facets;
      return emit(cli::cmd_build(build), out);
    }
    if (*sa) {
      if (!trace.empty()) sample.trace = trace;
      return emit(cli::cmd_sample(sample), out);
    }
    if (*vf) return emit(cli::cmd_verify(verify_seed, verify_cap), out);
    if (*ex) {
      if (out.empty()) {
        cli::cmd_export(exp, std::cout);
      } else {
        std::ofstream f(out);
        cli::cmd_export(exp, f);
      }
      return 0;
    }
  } catch (const hodgewalk::Error& e) {
    std::cerr << "hodgewalk: " << e.what() << '\n';
    return cli::exit_code_for(e.code());
  }
  return 0;
}
