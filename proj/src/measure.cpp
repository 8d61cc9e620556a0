#include "clr/measure.hpp"

#include "clr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace clr {

namespace {

void check_masses(const Eigen::VectorXd& m, const char* who) {
  for (Eigen::Index k = 0; k < m.size(); ++k)
    if (!std::isfinite(m[k]) || m[k] < 0.0) throw DomainError(std::string(who) + ": masses must be finite and >= 0");
}

}  // namespace

DiscreteMeasure DiscreteMeasure::from_atoms(Eigen::Matrix2Xd points, Eigen::VectorXd masses) {
  if (points.cols() != masses.size()) throw DomainError("DiscreteMeasure: point/mass count mismatch");
  if (!points.allFinite()) throw DomainError("DiscreteMeasure: non-finite atom position");
  check_masses(masses, "DiscreteMeasure");
  DiscreteMeasure mu;
  mu.points_ = std::move(points);
  mu.masses_ = std::move(masses);
  return mu;
}

DiscreteMeasure DiscreteMeasure::from_grid(CellGrid grid) {
  if (!(grid.cell.x() > 0.0) || !(grid.cell.y() > 0.0)) throw DomainError("DiscreteMeasure: cell sizes must be > 0");
  if (grid.mass.size() == 0) throw DomainError("DiscreteMeasure: empty grid");
  DiscreteMeasure mu;
  const Eigen::Index n = grid.mass.size();
  mu.points_.resize(2, n);
  mu.masses_.resize(n);
  for (Eigen::Index i = 0; i < grid.nx(); ++i)
    for (Eigen::Index j = 0; j < grid.ny(); ++j) {
      const Eigen::Index k = grid.flat(i, j);
      mu.points_.col(k) = grid.center(i, j);
      mu.masses_[k] = grid.mass(i, j);
    }
  check_masses(mu.masses_, "DiscreteMeasure");
  mu.grid_ = std::move(grid);
  return mu;
}

DiscreteMeasure DiscreteMeasure::lebesgue(const Eigen::Vector2d& origin, const Eigen::Vector2d& cell, Eigen::Index nx,
                                          Eigen::Index ny) {
  CellGrid g;
  g.origin = origin;
  g.cell = cell;
  g.mass = Eigen::MatrixXd::Constant(nx, ny, cell.x() * cell.y());
  auto mu = from_grid(std::move(g));
  mu.dimension_hint = 2.0;
  return mu;
}

bool DiscreteMeasure::is_lebesgue(double rel_tol) const {
  if (!grid_) return false;
  const double area = grid_->cell.x() * grid_->cell.y();
  return ((grid_->mass.array() - area).abs() <= rel_tol * area).all();
}

PotentialField::PotentialField(Eigen::VectorXd v) : values(std::move(v)) {
  for (Eigen::Index k = 0; k < values.size(); ++k)
    if (!std::isfinite(values[k]) || values[k] < 0.0) throw DomainError("PotentialField: values must be finite and >= 0");
}

PotentialField PotentialField::constant(const DiscreteMeasure& mu, double c) {
  return PotentialField(Eigen::VectorXd::Constant(mu.size(), c));
}

PotentialField PotentialField::sampled(const DiscreteMeasure& mu,
                                       const std::function<double(const Eigen::Vector2d&)>& f) {
  Eigen::VectorXd v(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) v[k] = f(mu.point(k));
  return PotentialField(std::move(v));
}

void PotentialField::check_aligned(const DiscreteMeasure& mu) const {
  if (values.size() != mu.size()) throw DomainError("PotentialField: not aligned with its measure");
}

LineMeasure LineMeasure::from_atoms(Eigen::VectorXd x, Eigen::VectorXd mass) {
  if (x.size() != mass.size()) throw DomainError("LineMeasure: position/mass count mismatch");
  if (!x.allFinite()) throw DomainError("LineMeasure: non-finite atom position");
  check_masses(mass, "LineMeasure");
  LineMeasure nu;
  nu.atom_x_ = std::move(x);
  nu.atom_m_ = std::move(mass);
  return nu;
}

LineMeasure LineMeasure::from_density(double origin, double step, Eigen::VectorXd cell_mass) {
  if (!(step > 0.0) || !std::isfinite(origin)) throw DomainError("LineMeasure: bad density grid");
  check_masses(cell_mass, "LineMeasure");
  LineMeasure nu;
  nu.origin_ = origin;
  nu.step_ = step;
  nu.cell_m_ = std::move(cell_mass);
  return nu;
}

LineMeasure LineMeasure::uniform(double lo, double hi, double c, Eigen::Index cells) {
  if (!(hi > lo) || cells < 1) throw DomainError("LineMeasure::uniform: need lo < hi and cells >= 1");
  const double step = (hi - lo) / cells;
  return from_density(lo, step, Eigen::VectorXd::Constant(cells, c * step));
}

bool LineMeasure::has_atoms() const { return (atom_m_.array() > 0.0).any(); }

double LineMeasure::total_mass() const { return atom_m_.sum() + cell_m_.sum(); }

double LineMeasure::density_mass(double lo, double hi) const {
  if (!(hi > lo) || cell_m_.size() == 0) return 0.0;
  double sum = 0.0;
  const Eigen::Index n = cell_m_.size();
  const Eigen::Index k0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::floor((lo - origin_) / step_)));
  const Eigen::Index k1 = std::min<Eigen::Index>(n - 1, static_cast<Eigen::Index>(std::floor((hi - origin_) / step_)));
  for (Eigen::Index k = k0; k <= k1; ++k) {
    const double a = origin_ + k * step_, b = a + step_;
    const double p = std::max(a, lo), q = std::min(b, hi);
    if (q > p) sum += cell_m_[k] * (q - p) / step_;
  }
  return sum;
}

double LineMeasure::density_abs_moment(double lo, double hi) const {
  if (!(hi > lo) || cell_m_.size() == 0) return 0.0;
  auto prim = [](double x) { return 0.5 * x * std::abs(x); };
  double sum = 0.0;
  const Eigen::Index n = cell_m_.size();
  const Eigen::Index k0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::floor((lo - origin_) / step_)));
  const Eigen::Index k1 = std::min<Eigen::Index>(n - 1, static_cast<Eigen::Index>(std::floor((hi - origin_) / step_)));
  for (Eigen::Index k = k0; k <= k1; ++k) {
    const double a = origin_ + k * step_, b = a + step_;
    const double p = std::max(a, lo), q = std::min(b, hi);
    if (q > p) sum += cell_m_[k] / step_ * (prim(q) - prim(p));
  }
  return sum;
}

std::pair<double, double> LineMeasure::support() const {
  double lo = INFINITY, hi = -INFINITY;
  for (Eigen::Index k = 0; k < atom_x_.size(); ++k)
    if (atom_m_[k] > 0.0) lo = std::min(lo, atom_x_[k]), hi = std::max(hi, atom_x_[k]);
  for (Eigen::Index k = 0; k < cell_m_.size(); ++k)
    if (cell_m_[k] > 0.0) lo = std::min(lo, origin_ + k * step_), hi = std::max(hi, origin_ + (k + 1) * step_);
  if (lo > hi) return {0.0, 0.0};
  return {lo, hi};
}

LineMeasure LineMeasure::scaled(double t) const {
  if (!(t >= 0.0)) throw DomainError("LineMeasure::scaled: factor must be >= 0");
  LineMeasure nu = *this;
  nu.atom_m_ *= t;
  nu.cell_m_ *= t;
  return nu;
}

LineMeasure LineMeasure::operator+(const LineMeasure& other) const {
  if (has_density() && other.has_density())
    throw DomainError("LineMeasure: cannot add two density parts");
  LineMeasure nu = has_density() ? *this : other;
  const LineMeasure& rest = has_density() ? other : *this;
  const LineMeasure& first = has_density() ? *this : other;
  nu.atom_x_.resize(first.atom_x_.size() + rest.atom_x_.size());
  nu.atom_m_.resize(nu.atom_x_.size());
  nu.atom_x_ << first.atom_x_, rest.atom_x_;
  nu.atom_m_ << first.atom_m_, rest.atom_m_;
  return nu;
}

double mass_in_ball(const DiscreteMeasure& mu, const Eigen::Vector2d& center, double r) {
  if (!(r >= 0.0)) throw DomainError("mass_in_ball: radius must be >= 0");
  double sum = 0.0;
  const double r2 = r * r;
  for (Eigen::Index k = 0; k < mu.size(); ++k)
    if ((mu.point(k) - center).squaredNorm() <= r2) sum += mu.mass(k);
  return sum;
}

double mass_in_rect(const DiscreteMeasure& mu, const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const Eigen::Vector2d p = mu.point(k);
    if ((p.array() >= lo.array()).all() && (p.array() <= hi.array()).all()) sum += mu.mass(k);
  }
  return sum;
}

AhlforsEstimate ahlfors_check(const DiscreteMeasure& mu, double alpha, const Eigen::Matrix2Xd& centers,
                              const std::vector<double>& radii, double ceiling) {
  if (centers.cols() == 0 || radii.empty()) throw DomainError("ahlfors_check: empty sample");
  if (!(alpha > 0.0) || alpha > 2.0) throw DomainError("ahlfors_check: alpha must lie in (0, 2]");
  AhlforsEstimate est;
  est.alpha = alpha;
  est.radii_sampled = radii;
  est.c0_hat = INFINITY;
  est.c1_hat = 0.0;
  for (Eigen::Index c = 0; c < centers.cols(); ++c)
    for (double r : radii) {
      if (!(r > 0.0)) throw DomainError("ahlfors_check: radii must be > 0");
      const double q = mass_in_ball(mu, centers.col(c), r) / std::pow(r, alpha);
      est.c0_hat = std::min(est.c0_hat, q);
      est.c1_hat = std::max(est.c1_hat, q);
    }
  est.ratio = est.c0_hat > 0.0 ? est.c1_hat / est.c0_hat : INFINITY;
  est.within_ceiling = est.ratio <= ceiling;
  return est;
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const AffineMap& xi) {
  if (!(xi.r1 > 0.0) || !(xi.r2 > 0.0)) throw DomainError("pushforward: scales must be > 0");
  DiscreteMeasure out;
  if (mu.is_grid()) {
    CellGrid g = *mu.grid();
    g.origin = xi(g.origin);
    g.cell = Eigen::Vector2d(xi.r1 * g.cell.x(), xi.r2 * g.cell.y());
    out = DiscreteMeasure::from_grid(std::move(g));
  } else {
    Eigen::Matrix2Xd pts(2, mu.size());
    for (Eigen::Index k = 0; k < mu.size(); ++k) pts.col(k) = xi(mu.point(k));
    out = DiscreteMeasure::from_atoms(std::move(pts), mu.masses());
  }
  out.dimension_hint = mu.dimension_hint;
  return out;
}

LineMeasure radial_projection(const PotentialField& V, const DiscreteMeasure& mu) {
  V.check_aligned(mu);
  Eigen::VectorXd r(mu.size()), m(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    r[k] = mu.point(k).norm();
    m[k] = V[k] * mu.mass(k);
  }
  return LineMeasure::from_atoms(std::move(r), std::move(m));
}

LineMeasure transverse_projection(const PotentialField& V, const DiscreteMeasure& mu,
                                  const std::function<double(double)>& u1, double a) {
  V.check_aligned(mu);
  if (!(a > 0.0)) throw DomainError("transverse_projection: width must be > 0");
  const double slack = 1e-12 * a;
  Eigen::VectorXd x(mu.size()), m(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const Eigen::Vector2d p = mu.point(k);
    if (p.y() < -slack || p.y() > a + slack)
      throw DomainError("transverse_projection: point (" + std::to_string(p.x()) + ", " + std::to_string(p.y()) +
                        ") lies outside the strip");
    const double u = u1(std::clamp(p.y(), 0.0, a));
    x[k] = p.x();
    m[k] = V[k] * u * u * mu.mass(k);
  }
  return LineMeasure::from_atoms(std::move(x), std::move(m));
}

DiscreteMeasure cantor_measure(int level, double x0, double y0, double length) {
  if (level < 1) throw DomainError("cantor_measure: level must be >= 1");
  if (level > 24) throw ResourceError("cantor_measure: level above 24 is not supported");
  std::vector<double> left{x0};
  double len = length;
  for (int l = 0; l < level; ++l) {
    std::vector<double> next;
    next.reserve(left.size() * 2);
    const double third = len / 3.0;
    for (double a : left) {
      next.push_back(a);
      next.push_back(a + 2.0 * third);
    }
    left.swap(next);
    len = third;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(left.size());
  Eigen::Matrix2Xd pts(2, n);
  for (Eigen::Index k = 0; k < n; ++k) pts.col(k) = Eigen::Vector2d(left[k] + 0.5 * len, y0);
  auto mu = DiscreteMeasure::from_atoms(std::move(pts), Eigen::VectorXd::Constant(n, std::ldexp(1.0, -level)));
  mu.dimension_hint = std::log(2.0) / std::log(3.0);
  return mu;
}

double RearrangedProfile::at(double r) const {
  if (radii.size() == 0) return 0.0;
  const auto* begin = radii.data();
  const auto* end = begin + radii.size();
  const auto* it = std::lower_bound(begin, end, r);
  if (it == end) return 0.0;
  return values[it - begin];
}

RearrangedProfile spherical_rearrangement(const PotentialField& V, const DiscreteMeasure& mu) {
  if (!mu.is_grid()) throw DomainError("spherical_rearrangement: needs a grid measure");
  V.check_aligned(mu);
  const Eigen::Index n = mu.size();
  std::vector<Eigen::Index> by_radius(n), by_value(n);
  std::iota(by_radius.begin(), by_radius.end(), 0);
  std::iota(by_value.begin(), by_value.end(), 0);
  std::stable_sort(by_radius.begin(), by_radius.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return mu.point(a).norm() < mu.point(b).norm(); });
  std::stable_sort(by_value.begin(), by_value.end(), [&](Eigen::Index a, Eigen::Index b) { return V[a] > V[b]; });
  RearrangedProfile out;
  out.radii.resize(n);
  out.values.resize(n);
  out.cell_values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.radii[k] = mu.point(by_radius[k]).norm();
    out.values[k] = V[by_value[k]];
    out.cell_values[by_radius[k]] = V[by_value[k]];
  }
  return out;
}

double max_axis_line_fraction(const DiscreteMeasure& mu) {
  if (mu.is_grid()) return 0.0;
  const double total = mu.total_mass();
  if (!(total > 0.0)) return 0.0;
  std::map<double, double> xs, ys;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    xs[mu.point(k).x()] += mu.mass(k);
    ys[mu.point(k).y()] += mu.mass(k);
  }
  double best = 0.0;
  for (const auto& [_, m] : xs) best = std::max(best, m);
  for (const auto& [_, m] : ys) best = std::max(best, m);
  return best / total;
}

}  // namespace clr
