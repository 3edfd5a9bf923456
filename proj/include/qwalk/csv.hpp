#pragma once

// Deterministic CSV emission. Floats are printed as the shortest decimal that
// parses back to the same double, so outputs are byte-stable across runs and
// locale-independent.

#include <string>

#include "qwalk/analysis.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

std::string format_double(double v);

// Headers by lattice: line "site,probability"; square "n1,n2,probability";
// honeycomb "n1,n2,n3,x,y,probability" with (x, y) the bond-length planar
// coordinates of each triple.
void write_distribution_csv(const std::string& path, const Distribution& d);

// Honeycomb distribution folded onto distinct planar points: "x,y,probability".
void write_euclidean_csv(const std::string& path, const Distribution& d);

// "t,variance" rows.
void write_variance_csv(const std::string& path, const VarianceSeries& s);

}  // namespace qwalk
