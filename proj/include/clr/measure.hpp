#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace clr {

/// Uniform grid of cells; `mass(i, j)` belongs to the cell whose lower-left
/// corner is origin + (i*hx, j*hy).
struct CellGrid {
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  Eigen::Vector2d cell = Eigen::Vector2d::Ones();
  Eigen::MatrixXd mass;

  Eigen::Index nx() const { return mass.rows(); }
  Eigen::Index ny() const { return mass.cols(); }
  Eigen::Vector2d center(Eigen::Index i, Eigen::Index j) const {
    return origin + Eigen::Vector2d((i + 0.5) * cell.x(), (j + 0.5) * cell.y());
  }
  /// Flat index used by DiscreteMeasure for cell (i, j).
  Eigen::Index flat(Eigen::Index i, Eigen::Index j) const { return i * ny() + j; }
};

/// Finite positive measure on the plane: weighted atoms, or a grid of cells
/// whose masses sit at the cell centres for every geometric query.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;

  static DiscreteMeasure from_atoms(Eigen::Matrix2Xd points, Eigen::VectorXd masses);
  static DiscreteMeasure from_grid(CellGrid grid);
  /// Lebesgue measure on [origin, origin + (nx*hx, ny*hy)].
  static DiscreteMeasure lebesgue(const Eigen::Vector2d& origin, const Eigen::Vector2d& cell, Eigen::Index nx,
                                  Eigen::Index ny);

  Eigen::Index size() const { return masses_.size(); }
  const Eigen::Matrix2Xd& points() const { return points_; }
  const Eigen::VectorXd& masses() const { return masses_; }
  Eigen::Vector2d point(Eigen::Index k) const { return points_.col(k); }
  double mass(Eigen::Index k) const { return masses_[k]; }
  double total_mass() const { return masses_.sum(); }

  bool is_grid() const { return grid_.has_value(); }
  const std::optional<CellGrid>& grid() const { return grid_; }
  /// True for a grid whose every cell carries its own area (within rel_tol).
  bool is_lebesgue(double rel_tol = 1e-12) const;

  std::optional<double> dimension_hint;

 private:
  Eigen::Matrix2Xd points_;
  Eigen::VectorXd masses_;
  std::optional<CellGrid> grid_;
};

/// Nonnegative potential values aligned with the points of a DiscreteMeasure.
struct PotentialField {
  Eigen::VectorXd values;

  PotentialField() = default;
  explicit PotentialField(Eigen::VectorXd v);
  static PotentialField constant(const DiscreteMeasure& mu, double c);
  static PotentialField sampled(const DiscreteMeasure& mu, const std::function<double(const Eigen::Vector2d&)>& f);

  Eigen::Index size() const { return values.size(); }
  double operator[](Eigen::Index k) const { return values[k]; }
  PotentialField scaled(double t) const { return PotentialField(values * t); }
  void check_aligned(const DiscreteMeasure& mu) const;
};

/// Measure on the real line: atoms plus an optional piecewise-constant
/// density on a uniform grid.
class LineMeasure {
 public:
  LineMeasure() = default;
  static LineMeasure from_atoms(Eigen::VectorXd x, Eigen::VectorXd mass);
  static LineMeasure from_density(double origin, double step, Eigen::VectorXd cell_mass);
  /// c times Lebesgue measure on [lo, hi], stored as a density on `cells` cells.
  static LineMeasure uniform(double lo, double hi, double c, Eigen::Index cells = 1);

  const Eigen::VectorXd& atom_positions() const { return atom_x_; }
  const Eigen::VectorXd& atom_masses() const { return atom_m_; }
  bool has_atoms() const;
  bool has_density() const { return cell_m_.size() > 0; }
  double density_origin() const { return origin_; }
  double density_step() const { return step_; }
  const Eigen::VectorXd& density_masses() const { return cell_m_; }

  double total_mass() const;
  /// Density mass of [lo, hi] (interpolated inside cells), no atoms.
  double density_mass(double lo, double hi) const;
  /// Integral of |x| against the density part over [lo, hi].
  double density_abs_moment(double lo, double hi) const;
  /// Smallest and largest point carrying mass.
  std::pair<double, double> support() const;

  LineMeasure scaled(double t) const;
  LineMeasure operator+(const LineMeasure& other) const;

 private:
  Eigen::VectorXd atom_x_, atom_m_;
  double origin_ = 0.0, step_ = 1.0;
  Eigen::VectorXd cell_m_;
};

double mass_in_ball(const DiscreteMeasure& mu, const Eigen::Vector2d& center, double r);
/// Mass of the closed rectangle [lo, hi].
double mass_in_rect(const DiscreteMeasure& mu, const Eigen::Vector2d& lo, const Eigen::Vector2d& hi);

struct AhlforsEstimate {
  double alpha = 0.0;
  double c0_hat = 0.0;
  double c1_hat = 0.0;
  std::vector<double> radii_sampled;
  double ratio = 0.0;
  bool within_ceiling = false;
};

AhlforsEstimate ahlfors_check(const DiscreteMeasure& mu, double alpha, const Eigen::Matrix2Xd& centers,
                              const std::vector<double>& radii, double ceiling = 1e3);

struct AffineMap {
  double r1 = 1.0, r2 = 1.0;
  Eigen::Vector2d shift = Eigen::Vector2d::Zero();
  Eigen::Vector2d operator()(const Eigen::Vector2d& x) const {
    return Eigen::Vector2d(r1 * x.x(), r2 * x.y()) + shift;
  }
};

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const AffineMap& xi);

LineMeasure radial_projection(const PotentialField& V, const DiscreteMeasure& mu);
LineMeasure transverse_projection(const PotentialField& V, const DiscreteMeasure& mu,
                                  const std::function<double(double)>& u1, double a);

/// Midpoints of the level-th ternary Cantor intervals of [x0, x0 + length]
/// on the horizontal line y = y0, each with mass 2^-level.
DiscreteMeasure cantor_measure(int level, double x0 = 0.0, double y0 = 0.0, double length = 1.0);

struct RearrangedProfile {
  Eigen::VectorXd radii;        // cell-centre radii, ascending
  Eigen::VectorXd values;       // V values, descending (V* at radii[k])
  Eigen::VectorXd cell_values;  // V* placed back on the grid cells
  double at(double r) const;    // V*(r) as a step function
};

RearrangedProfile spherical_rearrangement(const PotentialField& V, const DiscreteMeasure& mu);

/// Largest fraction of the total mass sitting on one horizontal or vertical
/// line through atoms (diagnostic for axis-aligned squares).
double max_axis_line_fraction(const DiscreteMeasure& mu);

}  // namespace clr
