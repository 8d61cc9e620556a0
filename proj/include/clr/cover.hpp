#pragma once

#include "clr/measure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace clr {

struct Square {
  Eigen::Vector2d center;
  double side = 0.0;
  double norm = 0.0;  // average norm of the extended potential over the square
  bool capped = false;
};

struct CoverOptions {
  /// Overrides every other way of fixing kappa0.
  std::optional<double> kappa0;
  /// Ahlfors constants (c0, c1, alpha); kappa0 = (c1/c0)(3 sqrt 2)^alpha.
  std::optional<Eigen::Vector3d> ahlfors;
  int besicovitch = 19;
};

struct CoverReport {
  std::vector<Square> squares;
  std::vector<int> family;  // family index of each square
  int linkage_bound = 0;    // number of pairwise-disjoint families used
  double kappa0 = 0.0;
  std::string kappa0_source;
  double region_norm = 0.0;
  double target = 0.0;
  std::vector<std::string> notes;
};

/// Squares centred at the mass points of the rectangle [g_lo, g_hi], each
/// grown until the average norm of V (extended by zero outside the rectangle)
/// reaches kappa0 N n^{-1} times the norm over the rectangle.
CoverReport adaptive_cover(const PotentialField& V, const DiscreteMeasure& mu, const Eigen::Vector2d& g_lo,
                           const Eigen::Vector2d& g_hi, int n, const CoverOptions& options = {});

/// Both sides of the centred-square inequality on the unit square with lower
/// left corner x0, for V = 1 and the logarithmic test function that equals 1
/// on the disc of radius r around x0.
struct SquareInequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  double gradient_energy = 0.0;
  double norm = 0.0;
  bool holds = false;
};

SquareInequalitySides corner_test_sides(const DiscreteMeasure& mu, const Eigen::Vector2d& x0, double r, double alpha,
                                        double c6 = 1.0, double c1_over_c0 = 1.0);

/// For the level-L Cantor measure on [x0, x0+1] x {y0}: running sums over
/// n <= L of mu(tripled square around each removed middle third), and the
/// mass of the tripled square around [x0, x0+1].
struct CantorCoverSums {
  std::vector<double> partial;
  double tripled_whole = 0.0;
};

CantorCoverSums cantor_offcenter_sums(const DiscreteMeasure& cantor, int level, double x0 = 0.0, double y0 = 0.0);

}  // namespace clr
