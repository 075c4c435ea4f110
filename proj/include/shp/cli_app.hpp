#pragma once

#include <iosfwd>
#include <string>

#include "shp/holding_period.hpp"

namespace shp::cli {

// Parses the holding-period mini-grammar:
//   point:<h>
//   twopoint:<h1>,<h2>,<p1>
//   exp:rate=<lambda> | exp:q99=<x>
//   gpd:k=<k>,alpha=<alpha>
//   invgamma:alpha=<alpha>,k=<k> | invgamma:alpha=<alpha>,mean=<m>
// Throws std::invalid_argument on malformed specs.
HoldingPeriodDist parse_shp_spec(const std::string& spec);

std::string family_name(const HoldingPeriodDist& dist);

// Runs the full command line. Writes results to `out` (or the file given by
// --out), diagnostics to `err`. Returns a process exit code; on any engine
// error no partial output is emitted.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shp::cli
