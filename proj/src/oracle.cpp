#include "clr/oracle.hpp"

#include "clr/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace clr {

SymmetricBandMatrix::SymmetricBandMatrix(Eigen::Index order, Eigen::Index bandwidth)
    : band_(Eigen::MatrixXd::Zero(bandwidth + 1, order)) {
  if (order < 1 || bandwidth < 0) throw DomainError("SymmetricBandMatrix: bad shape");
}

double SymmetricBandMatrix::operator()(Eigen::Index i, Eigen::Index j) const {
  if (i < j) std::swap(i, j);
  return i - j > bandwidth() ? 0.0 : band_(i - j, j);
}

void SymmetricBandMatrix::add(Eigen::Index i, Eigen::Index j, double v) {
  if (i < j) std::swap(i, j);
  if (i - j > bandwidth()) throw DomainError("SymmetricBandMatrix: entry outside the band");
  band_(i - j, j) += v;
}

Eigen::MatrixXd SymmetricBandMatrix::dense() const {
  const Eigen::Index n = order();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k <= bandwidth() && j + k < n; ++k) d(j + k, j) = d(j, j + k) = band_(k, j);
  return d;
}

double SymmetricBandMatrix::norm_inf() const {
  const Eigen::Index n = order();
  Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k <= bandwidth() && j + k < n; ++k) {
      const double a = std::abs(band_(k, j));
      row[j] += a;
      if (k > 0) row[j + k] += a;
    }
  return row.maxCoeff();
}

OracleResult inertia(const SymmetricBandMatrix& m, double shift) {
  if (!std::isfinite(shift)) throw DomainError("inertia: shift must be finite");
  Eigen::MatrixXd b = m.band();
  if (!b.allFinite()) throw DomainError("inertia: non-finite entries");
  b.row(0).array() -= shift;
  const Eigen::Index n = b.cols(), bw = b.rows() - 1;
  const double nudge = 1e-12 * std::max(1.0, m.norm_inf() + std::abs(shift));

  OracleResult out;
  out.shift = shift;
  out.order = n;
  out.min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = b(0, j);
    if (d == 0.0) {
      d = nudge;
      ++out.perturbed;
    }
    if (!std::isfinite(d)) throw ConvergenceError("inertia: factorisation broke down");
    out.min_pivot = std::min(out.min_pivot, std::abs(d));
    if (d < 0.0) ++out.count_below;
    const Eigen::Index len = std::min(bw, n - 1 - j);
    for (Eigen::Index k = 1; k <= len; ++k) {
      const double lk = b(k, j) / d;
      if (lk == 0.0) continue;
      b.col(j + k).head(len - k + 1) -= lk * b.col(j).segment(k, len - k + 1);
    }
  }
  return out;
}

namespace {

// Nodes x0 + i * step, i = 0..count-1, with elementwise stiffness weights and
// lumped masses.
struct Chain {
  double x0 = 0.0, step = 1.0;
  Eigen::VectorXd stiff;  // per element
  Eigen::VectorXd mass;   // per node
  Eigen::Index count() const { return mass.size(); }
};

Chain uniform_chain(double lo, double hi, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("oracle: h must be > 0");
  if (!(hi > lo)) throw DomainError("oracle: empty domain");
  const auto cells = static_cast<Eigen::Index>(std::ceil((hi - lo) / h - 1e-9));
  if (cells > 20'000'000) throw ResourceError("oracle: grid too fine");
  Chain c;
  c.x0 = lo;
  c.step = (hi - lo) / static_cast<double>(cells);
  c.stiff = Eigen::VectorXd::Constant(cells, 1.0 / c.step);
  c.mass = Eigen::VectorXd::Constant(cells + 1, c.step);
  c.mass[0] = c.mass[cells] = 0.5 * c.step;
  return c;
}

// Nearest node of x, or -1 when x lies outside the chain.
Eigen::Index nearest(const Chain& c, double x) {
  const double u = (x - c.x0) / c.step;
  const double tol = 1e-9;
  if (u < -tol || u > static_cast<double>(c.count() - 1) + tol) return -1;
  return std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::llround(u)), 0, c.count() - 1);
}

std::pair<double, double> dual_cell(const Chain& c, Eigen::Index i) {
  const double x = c.x0 + c.step * static_cast<double>(i);
  const double lo = i == 0 ? x : x - 0.5 * c.step;
  const double hi = i + 1 == c.count() ? x : x + 0.5 * c.step;
  return {lo, hi};
}

Eigen::VectorXd deposit_line(const LineMeasure& nu, const Chain& c) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(c.count());
  const auto& ax = nu.atom_positions();
  const auto& am = nu.atom_masses();
  for (Eigen::Index k = 0; k < ax.size(); ++k) {
    if (am[k] == 0.0) continue;
    const Eigen::Index i = nearest(c, ax[k]);
    if (i < 0) throw DomainError("oracle: measure has an atom outside the domain");
    p[i] += am[k];
  }
  if (nu.has_density()) {
    for (Eigen::Index i = 0; i < c.count(); ++i) {
      const auto [lo, hi] = dual_cell(c, i);
      p[i] += nu.density_mass(lo, hi);
    }
    const double lo = c.x0, hi = c.x0 + c.step * static_cast<double>(c.count() - 1);
    const double total = nu.density_masses().sum();
    if (nu.density_mass(lo, hi) < total * (1.0 - 1e-12) - 1e-300)
      throw DomainError("oracle: density extends outside the domain");
  }
  return p;
}

// D^{-1/2} (K - coupling P) D^{-1/2} for a chain, dropping the listed ends.
SymmetricBandMatrix chain_operator(const Chain& c, const Eigen::VectorXd& pot, double coupling, bool drop_first,
                                   bool drop_last) {
  const Eigen::Index n = c.count();
  const Eigen::Index first = drop_first ? 1 : 0, last = drop_last ? n - 2 : n - 1;
  if (last < first) throw DomainError("oracle: no free nodes");
  SymmetricBandMatrix m(last - first + 1, 1);
  for (Eigen::Index e = 0; e + 1 < n; ++e) {
    const double s = c.stiff[e];
    for (Eigen::Index a : {e, e + 1})
      if (a >= first && a <= last) m.add(a - first, a - first, s / c.mass[a]);
    if (e >= first && e + 1 <= last) m.add(e - first, e + 1 - first, -s / std::sqrt(c.mass[e] * c.mass[e + 1]));
  }
  for (Eigen::Index a = first; a <= last; ++a) m.add(a - first, a - first, -coupling * pot[a] / c.mass[a]);
  return m;
}

// Tensor grid of an x chain and a y chain; node (i, j) -> i * ny_free + (j - jf).
struct TensorGrid {
  Chain x, y;
  Eigen::VectorXd y_robin;  // boundary-form diagonal on the y chain
  Eigen::Index jf = 0, jl = 0;

  Eigen::Index ny_free() const { return jl - jf + 1; }
  Eigen::Index index(Eigen::Index i, Eigen::Index j) const { return i * ny_free() + (j - jf); }
};

Eigen::MatrixXd deposit_plane(const PotentialField& V, const DiscreteMeasure& mu, const TensorGrid& g) {
  V.check_aligned(mu);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(g.x.count(), g.y.count());
  const bool grid = mu.is_grid();
  const Eigen::Vector2d half = grid ? Eigen::Vector2d(0.5 * mu.grid()->cell) : Eigen::Vector2d::Zero();
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double w = V[k] * mu.mass(k);
    if (w == 0.0) continue;
    const Eigen::Vector2d c = mu.point(k);
    if (!grid) {
      const Eigen::Index i = nearest(g.x, c.x()), j = nearest(g.y, c.y());
      if (i < 0 || j < 0) throw DomainError("oracle: potential support escapes the box");
      p(i, j) += w;
      continue;
    }
    const Eigen::Vector2d lo = c - half, hi = c + half;
    const double area = (hi - lo).prod();
    const auto range = [](const Chain& ch, double a, double b) {
      const double ua = (a - ch.x0) / ch.step - 0.5, ub = (b - ch.x0) / ch.step + 0.5;
      return std::pair<Eigen::Index, Eigen::Index>(
          std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::floor(ua))),
          std::min<Eigen::Index>(ch.count() - 1, static_cast<Eigen::Index>(std::ceil(ub))));
    };
    const auto [i0, i1] = range(g.x, lo.x(), hi.x());
    const auto [j0, j1] = range(g.y, lo.y(), hi.y());
    double placed = 0.0;
    for (Eigen::Index i = i0; i <= i1; ++i) {
      const auto [xa, xb] = dual_cell(g.x, i);
      const double ox = std::min(xb, hi.x()) - std::max(xa, lo.x());
      if (ox <= 0.0) continue;
      for (Eigen::Index j = j0; j <= j1; ++j) {
        const auto [ya, yb] = dual_cell(g.y, j);
        const double oy = std::min(yb, hi.y()) - std::max(ya, lo.y());
        if (oy <= 0.0) continue;
        p(i, j) += w * ox * oy / area;
        placed += ox * oy / area;
      }
    }
    if (placed < 1.0 - 1e-9) throw DomainError("oracle: potential support escapes the box");
  }
  return p;
}

SymmetricBandMatrix tensor_operator(const TensorGrid& g, const Eigen::MatrixXd& pot, double coupling) {
  const Eigen::Index nx = g.x.count(), nyf = g.ny_free();
  SymmetricBandMatrix m(nx * nyf, nyf);
  auto mass = [&](Eigen::Index i, Eigen::Index j) { return g.x.mass[i] * g.y.mass[j]; };
  for (Eigen::Index i = 0; i < nx; ++i) {
    for (Eigen::Index j = g.jf; j <= g.jl; ++j) {
      const Eigen::Index a = g.index(i, j);
      const double mij = mass(i, j);
      double kx = 0.0, ky = g.y_robin[j];
      if (i > 0) kx += g.x.stiff[i - 1];
      if (i + 1 < nx) kx += g.x.stiff[i];
      if (j > 0) ky += g.y.stiff[j - 1];
      if (j + 1 < g.y.count()) ky += g.y.stiff[j];
      m.add(a, a, (kx * g.y.mass[j] + g.x.mass[i] * ky - coupling * pot(i, j)) / mij);
      if (j + 1 <= g.jl)
        m.add(a, g.index(i, j + 1), -g.x.mass[i] * g.y.stiff[j] / std::sqrt(mij * mass(i, j + 1)));
      if (i + 1 < nx)
        m.add(a, g.index(i + 1, j), -g.x.stiff[i] * g.y.mass[j] / std::sqrt(mij * mass(i + 1, j)));
    }
  }
  return m;
}

Chain transverse_chain(const RobinParams& p, double h) {
  p.validate();
  const auto cells = std::max<Eigen::Index>(8, static_cast<Eigen::Index>(std::ceil(p.a / h - 1e-9)));
  return uniform_chain(0.0, p.a, p.a / static_cast<double>(cells));
}

Eigen::VectorXd transverse_robin(const RobinParams& p, const Chain& y) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(y.count());
  if (!p.left_dirichlet()) r[0] -= p.alpha;
  if (!p.right_dirichlet()) r[y.count() - 1] += p.beta;
  return r;
}

}  // namespace

SymmetricBandMatrix discretize_1d(const LineMeasure& nu, double lo, double hi, double h, Boundary boundary,
                                  double coupling) {
  const Chain c = uniform_chain(lo, hi, h);
  const bool d = boundary == Boundary::dirichlet;
  return chain_operator(c, deposit_line(nu, c), coupling, d, d);
}

double discrete_lambda1(const RobinParams& p, double h) {
  if (!(h > 0.0)) throw DomainError("oracle: h must be > 0");
  Chain y = transverse_chain(p, h);
  SymmetricBandMatrix t = chain_operator(y, Eigen::VectorXd::Zero(y.count()), 0.0, p.left_dirichlet(),
                                         p.right_dirichlet());
  const Eigen::VectorXd r = transverse_robin(p, y);
  const Eigen::Index first = p.left_dirichlet() ? 1 : 0;
  for (Eigen::Index j = 0; j < t.order(); ++j) t.add(j, j, r[j + first] / y.mass[j + first]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

SymmetricBandMatrix discretize_strip(const PotentialField& V, const DiscreteMeasure& mu, const RobinParams& p,
                                     double L, double h, double coupling) {
  if (!(L > 0.0)) throw DomainError("discretize_strip: L must be > 0");
  if (!(h > 0.0)) throw DomainError("discretize_strip: h must be > 0");
  if (p.a / h < 8.0 - 1e-9) throw DomainError("discretize_strip: need at least 8 cells across the strip (a/h >= 8)");
  TensorGrid g;
  g.x = uniform_chain(-L, L, h);
  g.y = transverse_chain(p, h);
  g.y_robin = transverse_robin(p, g.y);
  g.jf = p.left_dirichlet() ? 1 : 0;
  g.jl = p.right_dirichlet() ? g.y.count() - 2 : g.y.count() - 1;
  SymmetricBandMatrix m = tensor_operator(g, deposit_plane(V, mu, g), coupling);
  m.add_diagonal(-discrete_lambda1(p, h));
  return m;
}

SymmetricBandMatrix discretize_plane(const PotentialField& V, const DiscreteMeasure& mu, double R, double h,
                                     double coupling) {
  if (!(R > 0.0)) throw DomainError("discretize_plane: R must be > 0");
  TensorGrid g;
  g.x = uniform_chain(-R, R, h);
  g.y = g.x;
  g.y_robin = Eigen::VectorXd::Zero(g.y.count());
  g.jf = 0;
  g.jl = g.y.count() - 1;
  return tensor_operator(g, deposit_plane(V, mu, g), coupling);
}

SymmetricBandMatrix discretize_radial(const LineMeasure& nu, double R, double h, double coupling) {
  Chain c = uniform_chain(0.0, R, h);
  const double s = c.step, two_pi = 2.0 * std::numbers::pi;
  c.mass.setZero();
  for (Eigen::Index e = 0; e + 1 < c.count(); ++e) {
    const double a = s * static_cast<double>(e), b = a + s;
    c.stiff[e] = two_pi * 0.5 * (a + b) / s;
    c.mass[e] += two_pi * s * (2.0 * a + b) / 6.0;
    c.mass[e + 1] += two_pi * s * (a + 2.0 * b) / 6.0;
  }
  return chain_operator(c, deposit_line(nu, c), coupling, false, false);
}

OracleResult oracle_1d(const LineMeasure& nu, double lo, double hi, double h, double coupling, Boundary boundary,
                       double shift) {
  OracleResult r = inertia(discretize_1d(nu, lo, hi, h, boundary, coupling), shift);
  r.h = h;
  r.truncation = std::max(std::abs(lo), std::abs(hi));
  return r;
}

OracleResult oracle_strip(const PotentialField& V, const DiscreteMeasure& mu, const RobinParams& p, double L,
                          double h, double coupling, double shift) {
  OracleResult r = inertia(discretize_strip(V, mu, p, L, h, coupling), shift);
  r.h = h;
  r.truncation = L;
  return r;
}

OracleResult oracle_plane(const PotentialField& V, const DiscreteMeasure& mu, double R, double h, double coupling,
                          double shift) {
  OracleResult r = inertia(discretize_plane(V, mu, R, h, coupling), shift);
  r.h = h;
  r.truncation = R;
  return r;
}

OracleResult oracle_radial(const LineMeasure& nu, double R, double h, double coupling, double shift) {
  OracleResult r = inertia(discretize_radial(nu, R, h, coupling), shift);
  r.h = h;
  r.truncation = R;
  return r;
}

}  // namespace clr
