#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>
#include <json.hpp>

#include "hodgewalk/commands.hpp"
#include "hodgewalk/complex.hpp"
#include "hodgewalk/facet_io.hpp"
#include "hodgewalk/graph.hpp"
#include "hodgewalk/matroid.hpp"
#include "hodgewalk/operators.hpp"

namespace fs = std::filesystem;
using namespace hodgewalk;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / ("hodgewalk_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path graph(const std::string& name, const Graph& g) const {
    std::ofstream os(path(name));
    write_graph(os, g);
    return path(name);
  }

  fs::path matroid(const std::string& name, const PartitionMatroid& m) const {
    std::ofstream(path(name)) << m.to_json().dump();
    return path(name);
  }

  fs::path complex(const std::string& name, const WeightedComplex& x) const {
    std::ofstream os(path(name));
    write_facets(os, x);
    return path(name);
  }

  Run run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + " " + HODGEWALK_BINARY + " " + args + " > " + path("stdout").string() + " 2> " +
                            path("stderr").string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(path("stdout"));
    r.err = slurp(path("stderr"));
    return r;
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("spectrum command") {
  Workspace ws;
  const auto file = ws.complex("k6.txt", complete_complex(6, 3));
  const Run r = ws.run("spectrum " + file.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "spectrum");
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["result"]["gamma"].size() == 3);
  CHECK(j["input_digest"].get<std::string>().rfind("sha256:", 0) == 0);

  const Run again = ws.run("spectrum " + file.string());
  CHECK(again.out == r.out);

  const Run level = ws.run("spectrum " + file.string() + " --level 2 --only main-bound");
  REQUIRE(level.code == 0);
  const auto lj = nlohmann::json::parse(level.out);
  REQUIRE(lj["result"]["levels"].size() == 1);
  CHECK(lj["result"]["levels"][0]["k"] == 2);

  const auto bad = ws.write("bad.txt", "f 1 2\nf x y\n");
  const Run parse = ws.run("spectrum " + bad.string());
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line 2") != std::string::npos);

  const auto mixed = ws.write("mixed.txt", "f 1 2 3\nf 1 4\n");
  CHECK(ws.run("spectrum " + mixed.string()).code == 3);

  CHECK(ws.run("spectrum " + file.string() + " --cap 3").code == 4);
  CHECK(ws.run("spectrum " + file.string(), "HODGEWALK_CAP=3").code == 4);
  CHECK(ws.run("spectrum " + file.string() + " --cap 100", "HODGEWALK_CAP=3").code == 0);
  CHECK(ws.run("spectrum " + file.string() + " --only bogus").code == 2);
  CHECK(ws.run("spectrum " + file.string() + " --level 7").code == 2);
  CHECK(ws.run("spectrum").code == 2);
  CHECK(ws.run("spectrum " + ws.path("missing.txt").string()).code == 2);
}

TEST_CASE("build command") {
  Workspace ws;
  const auto g = ws.graph("e6.txt", empty_graph(6));
  const Run r = ws.run("build is --graph " + g.string() + " --k 3 --facets " + ws.path("x.txt").string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["summary"]["fail"] == 0);
  const auto x = load_complex(ws.path("x.txt"));
  CHECK(x.dimension() == 2);
  CHECK(x.size(2) == 20);

  const auto [rows, cols] = grid_matroids(6, 6);
  const auto m1 = ws.matroid("rows.json", rows);
  const auto m2 = ws.matroid("cols.json", cols);
  const Run mi = ws.run("build mi --m1 " + m1.string() + " --m2 " + m2.string() + " --k 2");
  CHECK(mi.code == 0);

  const auto star = ws.graph("star.txt", star_graph(3));
  const Run np = ws.run("build is --graph " + star.string() + " --k 2");
  CHECK(np.code == 3);
  CHECK(np.err.find("{0}") != std::string::npos);

  CHECK(ws.run("build is --k 2").code == 2);
  const auto junk = ws.write("junk.json", "{\"blocks\": 1}");
  CHECK(ws.run("build mi --m1 " + junk.string() + " --m2 " + m2.string() + " --k 2").code == 2);
}

TEST_CASE("sample command") {
  Workspace ws;
  const auto g = ws.graph("e8.txt", empty_graph(8));
  const std::string base = "sample is --graph " + g.string() + " --k 2 --seed 3 --eps 0.05";
  const std::string args = base + " --samples 100000";
  const Run r = ws.run(args);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["budget"]["source"] == "theorem");
  CHECK(j["result"]["states"] == 28);
  CHECK(j["result"]["tv"].get<double>() <= 0.05);
  CHECK(ws.run(args).out == r.out);

  const Run traced = ws.run(base + " --samples 5 --trace " + ws.path("t.txt").string());
  CHECK(traced.code == 0);
  std::istringstream lines(slurp(ws.path("t.txt")));
  int count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  CHECK(count == 5);

  const auto [rows, cols] = grid_matroids(6, 6);
  const auto m1 = ws.matroid("rows.json", rows);
  const auto m2 = ws.matroid("cols.json", cols);
  const Run mi = ws.run("sample mi --m1 " + m1.string() + " --m2 " + m2.string() + " --k 2 --samples 20000");
  REQUIRE(mi.code == 0);
  CHECK(nlohmann::json::parse(mi.out)["result"]["states"] == 450);

  const auto c4 = ws.graph("c4.txt", cycle_graph(4));
  const Run frozen = ws.run("sample is --graph " + c4.string() + " --k 2");
  CHECK(frozen.code == 2);
  CHECK(frozen.err.find("NoBudget") != std::string::npos);
  CHECK(ws.run("sample is --graph " + c4.string() + " --k 2 --burnin 10 --samples 10").code == 0);
}

TEST_CASE("verify and export commands") {
  Workspace ws;
  const Run v = ws.run("verify all");
  CHECK(v.code == 0);
  CHECK(nlohmann::json::parse(v.out)["summary"]["fail"] == 0);
  CHECK(ws.run("verify all").out == v.out);

  const auto x = complete_complex(5, 2);
  const auto file = ws.complex("k5.txt", x);
  const Run e = ws.run("export " + file.string() + " --op downup --j 1");
  REQUIRE(e.code == 0);
  std::istringstream is(e.out);
  const auto m = read_matrix(is);
  CHECK((m - down_up_walk(x, 1).matrix).cwiseAbs().maxCoeff() == 0.0);
  CHECK(ws.run("export " + file.string() + " --op long --j 0 --b 2").code == 0);
  CHECK(ws.run("export " + file.string() + " --op long --j 2 --b 1").code == 2);
  CHECK(ws.run("export " + file.string() + " --op sideways").code == 2);
}

TEST_CASE("exit code mapping") {
  using cli::exit_code_for;
  CHECK(exit_code_for(ErrorCode::ParseError) == 2);
  CHECK(exit_code_for(ErrorCode::NonPure) == 3);
  CHECK(exit_code_for(ErrorCode::CapExceeded) == 4);
  CHECK(exit_code_for(ErrorCode::TooLarge) == 4);
  CHECK(exit_code_for(ErrorCode::NotSimpleB) == 3);
  CHECK(cli::text_digest("") ==
        "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}
