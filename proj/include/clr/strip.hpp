#pragma once

#include "clr/constants.hpp"
#include "clr/measure.hpp"
#include "clr/oned.hpp"
#include "clr/report.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace clr {

/// Boundary data for -w'' = tau w on (0, a) with
/// w'(0) + alpha w(0) = 0 and w'(a) + beta w(a) = 0.
/// An infinite alpha or beta (either sign) means a Dirichlet condition.
struct RobinParams {
  double alpha = 0.0;
  double beta = 0.0;
  double a = 1.0;

  static constexpr double dirichlet = std::numeric_limits<double>::infinity();

  bool left_dirichlet() const { return std::isinf(alpha); }
  bool right_dirichlet() const { return std::isinf(beta); }
  void validate() const;
};

enum class Region { A, B, C, D, E };
const char* to_string(Region r);

Region region_classify(const RobinParams& p);
/// Number of negative transverse eigenvalues implied by the region.
int negative_count(Region r);

/// Number of transverse eigenvalues strictly below tau.
int count_below(const RobinParams& p, double tau);

/// Characteristic function whose zeros are the eigenvalues (Robin-Robin),
/// entire in tau.  For Dirichlet ends the matching limit is used.
double characteristic(const RobinParams& p, double tau);

enum class ModeKind { trigonometric, hyperbolic, affine };

/// u(y) = scale * w(y), where w solves the left boundary condition with
/// w(0) = 1, w'(0) = -alpha (or w(0) = 0, w'(0) = 1 for a Dirichlet end).
struct TransverseMode {
  double tau = 0.0;
  double alpha = 0.0;
  bool left_dirichlet = false;
  double scale = 1.0;
  double shift = 0.0;  // exponent offset keeping hyperbolic modes finite
  ModeKind kind = ModeKind::affine;

  double operator()(double y) const;
  double raw(double y) const;
};

struct TransverseSpectrum {
  std::vector<double> taus;
  std::vector<TransverseMode> modes;
  std::vector<double> residuals;
  std::optional<Region> region;  // set for finite alpha, beta
};

TransverseSpectrum transverse_spectrum(const RobinParams& p, int k);

struct Lambda12 {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  TransverseMode u1;
};

/// First two eigenvalues of the unit cell (n, n+1) x (0, a) with Neumann
/// ends in x1, and the normalised first transverse mode.
Lambda12 lambda12(const RobinParams& p);

/// L^2(0, a) norm squared of a mode, by composite Gauss-Legendre.
double mode_norm2(const TransverseMode& u, double a, int panels = 64);

struct StripNeumannTerms {
  TermSeries A;  // dyadic in x1, |x1|-weighted
  TermSeries D;  // unit cells, mixed norm
};

struct StripRobinTerms {
  TermSeries F;                 // dyadic in x1, projected on u1
  TermSeries M;                 // unit cells, Orlicz norm with level 1
  std::optional<TermSeries> D;  // unit cells, mixed norm (Lebesgue grid only)
};

/// `mu` must be a Lebesgue grid spanning exactly 0 <= x2 <= a.
StripNeumannTerms strip_terms_neumann(const PotentialField& V, const DiscreteMeasure& mu, double a);
StripRobinTerms strip_terms_robin(const PotentialField& V, const DiscreteMeasure& mu, const RobinParams& p);

BoundReport bound_strip_neumann(const StripNeumannTerms& terms,
                                const ConstantSet& constants = default_constants(Theorem::gest2));
/// Uses the mixed-norm path when `terms.D` is present.
BoundReport bound_strip_robin(const StripRobinTerms& terms, std::optional<ConstantSet> constants = std::nullopt);

}  // namespace clr
