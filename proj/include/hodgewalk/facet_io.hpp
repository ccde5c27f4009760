#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "hodgewalk/complex.hpp"

namespace hodgewalk {

struct FacetList {
  std::vector<Face> facets;
  std::vector<double> weights;
};

/**
 * Facet text format, one facet per line:
 *
 *   f <weight> <v1> <v2> ... <vk>
 *
 * Blank lines and lines starting with '#' are skipped. The weight is optional
 * and defaults to 1.0; it is recognised by a decimal point, exponent or sign,
 * so integer weights must be written as e.g. "2.0".
 */
FacetList read_facets(std::istream& is);
FacetList read_facets(const std::filesystem::path& path);

void write_facets(std::ostream& os, std::span<const Face> facets, std::span<const double> weights);
/// Writes the top level of `x` with Pi_d as weights.
void write_facets(std::ostream& os, const WeightedComplex& x);

WeightedComplex load_complex(const std::filesystem::path& path);

}  // namespace hodgewalk
