#pragma once

#include "clr/measure.hpp"
#include "clr/strip.hpp"

#include <Eigen/Dense>

#include <string>

namespace clr {

/// Lower band of a symmetric matrix: `band()(i - j, j)` holds entry (i, j)
/// for 0 <= i - j <= bandwidth.
class SymmetricBandMatrix {
 public:
  SymmetricBandMatrix() = default;
  SymmetricBandMatrix(Eigen::Index order, Eigen::Index bandwidth);

  Eigen::Index order() const { return band_.cols(); }
  Eigen::Index bandwidth() const { return band_.rows() - 1; }

  double operator()(Eigen::Index i, Eigen::Index j) const;
  void add(Eigen::Index i, Eigen::Index j, double v);
  void add_diagonal(double v) { band_.row(0).array() += v; }

  const Eigen::MatrixXd& band() const { return band_; }
  Eigen::MatrixXd& band() { return band_; }

  Eigen::MatrixXd dense() const;
  /// Max absolute row sum.
  double norm_inf() const;

 private:
  Eigen::MatrixXd band_;
};

struct OracleResult {
  int count_below = 0;
  double shift = 0.0;
  double h = 0.0;
  double truncation = 0.0;
  double min_pivot = 0.0;  // smallest |d_k| met during the factorisation
  int perturbed = 0;       // pivots nudged off zero
  Eigen::Index order = 0;
};

/// LDL^T of (m - shift I) without pivoting; count of negative pivots.
OracleResult inertia(const SymmetricBandMatrix& m, double shift);
inline int inertia_count(const SymmetricBandMatrix& m, double shift) { return inertia(m, shift).count_below; }

enum class Boundary { neumann, dirichlet };

/// -u'' - coupling * nu on [lo, hi], nodes every h, lumped mass.
SymmetricBandMatrix discretize_1d(const LineMeasure& nu, double lo, double hi, double h,
                                  Boundary boundary = Boundary::neumann, double coupling = 1.0);

/// Strip operator on (-L, L) x (0, a) with Robin rows at the two walls and
/// Neumann ends in x1, shifted by the lowest eigenvalue of its own transverse
/// discretisation.
SymmetricBandMatrix discretize_strip(const PotentialField& V, const DiscreteMeasure& mu, const RobinParams& p,
                                     double L, double h, double coupling = 1.0);
/// Lowest eigenvalue of the transverse matrix used by discretize_strip.
double discrete_lambda1(const RobinParams& p, double h);

/// -Laplacian - coupling * V mu on [-R, R]^2 with Neumann edges.
SymmetricBandMatrix discretize_plane(const PotentialField& V, const DiscreteMeasure& mu, double R, double h,
                                     double coupling = 1.0);

/// Radial functions only: 2 pi int |f'|^2 r dr - coupling * int |f|^2 d nu on
/// [0, R], where nu lives on radii.
SymmetricBandMatrix discretize_radial(const LineMeasure& nu, double R, double h, double coupling = 1.0);

inline constexpr double kOracleShift = -1e-9;

OracleResult oracle_1d(const LineMeasure& nu, double lo, double hi, double h, double coupling = 1.0,
                       Boundary boundary = Boundary::neumann, double shift = kOracleShift);
OracleResult oracle_strip(const PotentialField& V, const DiscreteMeasure& mu, const RobinParams& p, double L,
                          double h, double coupling = 1.0, double shift = kOracleShift);
OracleResult oracle_plane(const PotentialField& V, const DiscreteMeasure& mu, double R, double h,
                          double coupling = 1.0, double shift = kOracleShift);
OracleResult oracle_radial(const LineMeasure& nu, double R, double h, double coupling = 1.0,
                           double shift = kOracleShift);

}  // namespace clr
