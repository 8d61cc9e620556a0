#pragma once

#include "clr/measure.hpp"

#include <optional>
#include <string>

namespace clr {

/// Contents of a measure/potential file.
///
///   {"type":"grid","origin":[x,y],"cell":[hx,hy],"mass":[[...]],"potential":[[...]]}
///   {"type":"atoms","points":[[x,y,mass,V],...]}
///   {"type":"line","atoms":[[x,mass],...],"density":{"origin":x,"step":h,"mass":[...]}}
///
/// Grid arrays are indexed mass[i][j] with i along x1.  Every number must be
/// finite and masses and potentials nonnegative; violations raise InputError
/// carrying the 1-based line of the offending token.
struct LoadedInput {
  std::string type;
  DiscreteMeasure mu;
  PotentialField V;
  std::optional<LineMeasure> line;  // set for "line" inputs
  Eigen::Vector2d shift = Eigen::Vector2d::Zero();
};

LoadedInput parse_input(const std::string& text);
LoadedInput load_input(const std::string& path);

/// Translate so that the mass point nearest the V-weighted centroid sits at
/// the origin (for grids: the nearest cell vertex); returns the translation
/// that was subtracted.
Eigen::Vector2d recenter(LoadedInput& in);

/// 1D measure seen by the line bounds: the line part itself, or the
/// x1-projection of V mu for planar inputs.
LineMeasure as_line_measure(const LoadedInput& in);

}  // namespace clr
