#pragma once

#include "clr/constants.hpp"
#include "clr/measure.hpp"
#include "clr/orlicz.hpp"
#include "clr/report.hpp"

#include <utility>

namespace clr {

enum class RingKind { exp_dyadic_J, exp_unit_Omega, ahlfors_Q };

/// Annuli in |x|.  J_n and Omega_n are fixed; Q_n has radii
/// (2 c1 / c0)^{(n-1)/alpha} to (2 c1 / c0)^{n/alpha}.
struct RingDecomposition {
  RingKind kind = RingKind::exp_dyadic_J;
  double c0 = 1.0, c1 = 1.0, alpha = 2.0;

  static RingDecomposition J() { return {}; }
  static RingDecomposition Omega() { return {RingKind::exp_unit_Omega}; }
  static RingDecomposition Q(double c0, double c1, double alpha);

  std::pair<double, double> interval(int n) const;
  /// Ring holding radius r > 0; shared radii go to the smaller |n|.
  int index_of(double r) const;
};

/// G_n: |ln|x||-weighted V mass in J_n (unweighted for n = 0).
TermSeries weighted_terms_plane(const PotentialField& V, const DiscreteMeasure& mu);

/// D_n: average norm of V over Q_n.  Rings thinner than two cells of a grid
/// measure are merged with their outer neighbours.
TermSeries orlicz_terms_plane(const PotentialField& V, const DiscreteMeasure& mu, double c0, double c1,
                              double alpha);

BoundReport bound_plane_measure(const TermSeries& G, const TermSeries& D,
                                const ConstantSet& constants = default_constants(Theorem::mainthm));

struct PlaneLebesgueOptions {
  SliceNorm angular = SliceNorm::average;
  bool radial = false;  // potential is known to depend on |x| only
  int min_radial_nodes = 8;
};

/// Polar mixed norm of V over the ring e^n < |x| < e^{n+1}, for every n that
/// meets the grid.
TermSeries polar_terms_plane(const PotentialField& V, const DiscreteMeasure& mu, SliceNorm angular);

BoundReport bound_plane_lebesgue(const PotentialField& V, const DiscreteMeasure& mu,
                                 const PlaneLebesgueOptions& options = {},
                                 const ConstantSet& constants = default_constants(Theorem::laptnetrsol));

struct KhuriValue {
  double weighted = 0.0;  // integral of V ln(2 + |x|)
  double core = 0.0;      // integral over |x| < 1 of V*(|x|) ln(1/|x|)
  double functional = 0.0;
  ConstantSet constants;
};

KhuriValue khuri_bound(const PotentialField& V, const DiscreteMeasure& mu);

}  // namespace clr
