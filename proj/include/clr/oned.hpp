#pragma once

#include "clr/constants.hpp"
#include "clr/measure.hpp"
#include "clr/report.hpp"

#include <utility>
#include <vector>

namespace clr {

/// I_n = [2^{n-1}, 2^n] for n > 0, I_0 = [-1, 1], mirrored for n < 0.
struct DyadicDecomposition {
  int n_min = -62;
  int n_max = 62;

  static std::pair<double, double> interval(int n);
  /// Index of the interval holding x; shared endpoints go to the smaller |n|.
  static int index_of(double x);
  /// Smallest range covering [lo, hi].
  static DyadicDecomposition covering(double lo, double hi);
};

double c_kappa(double kappa, double a, double b);
double phi_kappa(double kappa);

struct KappaCalculus {
  double kappa = 0.0;
  double phi_value = 0.0;
  double c_value = 0.0;  // C(kappa; 1, 2)
};
KappaCalculus kappa_calculus(double kappa);

struct KappaOptimum {
  double kappa = 0.0;
  double phi = 0.0;
};
KappaOptimum optimize_phi(double tol = 1e-10);

TermSeries weighted_terms_1d(const LineMeasure& nu, const DyadicDecomposition& dec);
inline TermSeries weighted_terms_1d(const LineMeasure& nu) {
  const auto [lo, hi] = nu.support();
  return weighted_terms_1d(nu, DyadicDecomposition::covering(lo, hi));
}

BoundReport bound_1d_general(const TermSeries& terms, double kappa);
BoundReport bound_1d(const TermSeries& terms, const ConstantSet& constants = default_constants(Theorem::est1));

/// Breakpoints t_1 < ... < t_{n-1} of (lo, hi) with
/// max_k |I_k|^a nu(I_k) <= l^a n^{-1-a} nu(I).
std::vector<double> partition_interval(const LineMeasure& nu, double lo, double hi, int n, double a_exp);
/// max_k (t_k - t_{k-1})^a nu(I_k) for the pieces cut at `breaks`.
double partition_quality(const LineMeasure& nu, double lo, double hi, const std::vector<double>& breaks,
                         double a_exp);

/// Convolution with the normalised bump exp(-1/(1-t^2)) scaled to [-eps, eps],
/// returned as a density on a grid of step at most eps/16.
LineMeasure mollify_measure(const LineMeasure& nu, double eps);

}  // namespace clr
