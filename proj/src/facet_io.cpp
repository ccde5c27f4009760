#include "hodgewalk/facet_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hodgewalk/error.hpp"

namespace hodgewalk {

namespace {

bool looks_like_weight(const std::string& tok) {
  return tok.find_first_of(".eE") != std::string::npos || tok.front() == '-' || tok.front() == '+';
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

FacetList read_facets(std::istream& is) {
  FacetList out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag.front() == '#') continue;
    if (tag != "f") parse_fail(lineno, "expected 'f', got '" + tag + "'");

    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) parse_fail(lineno, "facet has no vertices");

    double weight = 1.0;
    std::size_t first = 0;
    if (looks_like_weight(toks.front())) {
      const std::string& w = toks.front();
      std::size_t used = 0;
      try {
        weight = std::stod(w, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != w.size()) parse_fail(lineno, "bad weight '" + w + "'");
      first = 1;
    }
    std::vector<Vertex> verts;
    for (std::size_t i = first; i < toks.size(); ++i) {
      const std::string& t = toks[i];
      Vertex v = 0;
      const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc() || ptr != t.data() + t.size()) parse_fail(lineno, "bad vertex '" + t + "'");
      verts.push_back(v);
    }
    if (verts.empty()) parse_fail(lineno, "facet has no vertices");
    try {
      out.facets.emplace_back(verts);
    } catch (const Error& e) {
      parse_fail(lineno, e.what());
    }
    out.weights.push_back(weight);
  }
  return out;
}

FacetList read_facets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return read_facets(in);
}

void write_facets(std::ostream& os, std::span<const Face> facets, std::span<const double> weights) {
  if (facets.size() != weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "facet and weight counts differ");
  }
  char buf[40];
  for (std::size_t i = 0; i < facets.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", weights[i]);
    std::string w = buf;
    if (w.find_first_of(".eE") == std::string::npos) w += ".0";
    os << "f " << w;
    for (Vertex v : facets[i]) os << ' ' << v;
    os << '\n';
  }
}

void write_facets(std::ostream& os, const WeightedComplex& x) {
  write_facets(os, x.faces(x.dimension()), x.pi(x.dimension()));
}

WeightedComplex load_complex(const std::filesystem::path& path) {
  const FacetList f = read_facets(path);
  return build_complex(f.facets, f.weights);
}

}  // namespace hodgewalk
