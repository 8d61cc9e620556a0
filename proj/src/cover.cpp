#include "clr/cover.hpp"

#include "clr/errors.hpp"
#include "clr/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace clr {

namespace {

bool inside(const Eigen::Vector2d& p, const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
  return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
}

// Average norm of V_* (V on [g_lo, g_hi], 0 elsewhere) over the closed square.
double square_norm(const PotentialField& V, const DiscreteMeasure& mu, const Eigen::Vector2d& g_lo,
                   const Eigen::Vector2d& g_hi, const Eigen::Vector2d& c, double side, const NFunctionPair& pair) {
  const Eigen::Vector2d half = Eigen::Vector2d::Constant(0.5 * side);
  std::vector<double> v, w;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (mu.mass(k) == 0.0) continue;
    const Eigen::Vector2d p = mu.point(k);
    if (!inside(p, c - half, c + half)) continue;
    v.push_back(inside(p, g_lo, g_hi) ? V[k] : 0.0);
    w.push_back(mu.mass(k));
  }
  if (v.empty()) return 0.0;
  WeightedSamples s(Eigen::Map<Eigen::VectorXd>(v.data(), v.size()), Eigen::Map<Eigen::VectorXd>(w.data(), w.size()));
  return average_norm(s, pair);
}

bool overlap(const Square& a, const Square& b) {
  const double reach = 0.5 * (a.side + b.side);
  return std::abs(a.center.x() - b.center.x()) <= reach && std::abs(a.center.y() - b.center.y()) <= reach;
}

}  // namespace

CoverReport adaptive_cover(const PotentialField& V, const DiscreteMeasure& mu, const Eigen::Vector2d& g_lo,
                           const Eigen::Vector2d& g_hi, int n, const CoverOptions& options) {
  V.check_aligned(mu);
  if (n < 1) throw DomainError("adaptive_cover: n must be >= 1");
  if (!(g_hi.array() > g_lo.array()).all()) throw DomainError("adaptive_cover: empty region");
  const auto pair = NFunctionPair::llogl();
  CoverReport rep;

  const Eigen::Vector2d mid = 0.5 * (g_lo + g_hi);
  const double star_half = 1.5 * (g_hi - g_lo).maxCoeff();
  const Eigen::Vector2d star_lo = mid.array() - star_half, star_hi = mid.array() + star_half;
  const double mass_g = mass_in_rect(mu, g_lo, g_hi);
  if (!(mass_g > 0.0)) throw DomainError("adaptive_cover: region carries no mass");

  if (options.kappa0) {
    rep.kappa0 = *options.kappa0;
    rep.kappa0_source = "user";
  } else if (options.ahlfors) {
    const auto& a = *options.ahlfors;
    rep.kappa0 = a[1] / a[0] * std::pow(3.0 * std::sqrt(2.0), a[2]);
    rep.kappa0_source = "Ahlfors constants";
  } else {
    rep.kappa0 = mass_in_rect(mu, star_lo, star_hi) / mass_g;
    rep.kappa0_source = "mass ratio of the tripled square";
  }
  if (!(rep.kappa0 > 0.0)) throw DomainError("adaptive_cover: kappa0 must be > 0");
  const int N = options.besicovitch;
  if (!(n > rep.kappa0 * N)) throw DomainError("adaptive_cover: need n > kappa0 * N");

  {
    std::vector<double> v, w;
    for (Eigen::Index k = 0; k < mu.size(); ++k)
      if (mu.mass(k) > 0.0 && inside(mu.point(k), g_lo, g_hi)) v.push_back(V[k]), w.push_back(mu.mass(k));
    WeightedSamples s(Eigen::Map<Eigen::VectorXd>(v.data(), v.size()), Eigen::Map<Eigen::VectorXd>(w.data(), w.size()));
    rep.region_norm = average_norm(s, pair);
  }
  rep.target = rep.kappa0 * N / n * rep.region_norm;

  std::vector<char> covered(mu.size(), 0);
  for (Eigen::Index k = 0; k < mu.size(); ++k)
    if (mu.mass(k) == 0.0 || !inside(mu.point(k), g_lo, g_hi)) covered[k] = 1;

  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (covered[k]) continue;
    const Eigen::Vector2d x = mu.point(k);
    // largest centred square inside G*
    const double cap = 2.0 * std::min({x.x() - star_lo.x(), star_hi.x() - x.x(), x.y() - star_lo.y(),
                                       star_hi.y() - x.y()});
    Square sq;
    sq.center = x;
    if (square_norm(V, mu, g_lo, g_hi, x, cap, pair) < rep.target) {
      sq.side = cap;
      sq.capped = true;
    } else {
      double lo = 0.0, hi = cap;
      for (int it = 0; it < 200 && hi - lo > 1e-13 * cap; ++it) {
        const double m = 0.5 * (lo + hi);
        (square_norm(V, mu, g_lo, g_hi, x, m, pair) >= rep.target ? hi : lo) = m;
      }
      sq.side = hi;
    }
    sq.norm = square_norm(V, mu, g_lo, g_hi, x, sq.side, pair);
    const Eigen::Vector2d half = Eigen::Vector2d::Constant(0.5 * sq.side);
    for (Eigen::Index j = 0; j < mu.size(); ++j)
      if (!covered[j] && inside(mu.point(j), x - half, x + half)) covered[j] = 1;
    covered[k] = 1;
    rep.squares.push_back(sq);
  }

  // split into families of pairwise disjoint squares, first fit
  rep.family.assign(rep.squares.size(), -1);
  for (std::size_t i = 0; i < rep.squares.size(); ++i) {
    for (int f = 0;; ++f) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (rep.family[j] == f && overlap(rep.squares[i], rep.squares[j])) ok = false;
      if (ok) {
        rep.family[i] = f;
        rep.linkage_bound = std::max(rep.linkage_bound, f + 1);
        break;
      }
    }
  }
  if (rep.linkage_bound > N) rep.notes.push_back("more families than the Besicovitch constant");
  if (std::any_of(rep.squares.begin(), rep.squares.end(), [](const Square& s) { return s.capped; }))
    rep.notes.push_back("target unreachable for some squares; capped at the tripled region");
  if (max_axis_line_fraction(mu) > 1e-12)
    rep.notes.push_back("an axis-parallel line carries mass; square edges are closed");
  if (static_cast<int>(rep.squares.size()) > n)
    throw InvariantViolation("adaptive_cover: " + std::to_string(rep.squares.size()) + " squares exceed n = " +
                             std::to_string(n));
  return rep;
}

SquareInequalitySides corner_test_sides(const DiscreteMeasure& mu, const Eigen::Vector2d& x0, double r, double alpha,
                                        double c6, double c1_over_c0) {
  if (!(r > 0.0) || !(r * std::sqrt(2.0) < 1.0)) throw DomainError("corner_test_sides: need 0 < r < 1/sqrt(2)");
  const double lr = std::log(r * std::sqrt(2.0));
  auto w = [&](double rho) {
    if (rho <= r) return 1.0;
    if (rho >= 1.0 / std::sqrt(2.0)) return 0.0;
    return std::log(rho * std::sqrt(2.0)) / lr;
  };
  const Eigen::Vector2d q_hi = x0 + Eigen::Vector2d::Ones();
  SquareInequalitySides out;
  std::vector<double> v, m;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (!inside(mu.point(k), x0, q_hi)) continue;
    const double wk = w((mu.point(k) - x0).norm());
    out.lhs += wk * wk * mu.mass(k);
    v.push_back(1.0);
    m.push_back(mu.mass(k));
  }
  if (!v.empty()) {
    WeightedSamples s(Eigen::Map<Eigen::VectorXd>(v.data(), v.size()), Eigen::Map<Eigen::VectorXd>(m.data(), m.size()));
    out.norm = average_norm(s, NFunctionPair::llogl());
  }
  // quarter-annulus energy: (pi/2) * integral_r^{1/sqrt2} w'(rho)^2 rho d rho, Gauss-Legendre in log rho
  static const double xs[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                              0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
  static const double ws[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                              0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  const double t0 = std::log(r), t1 = std::log(1.0 / std::sqrt(2.0));
  const int panels = 32;
  double e = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = t0 + (t1 - t0) * p / panels, b = t0 + (t1 - t0) * (p + 1) / panels;
    for (int q = 0; q < 8; ++q) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * xs[q];
      const double rho = std::exp(t);
      const double dw = 1.0 / (rho * lr);
      e += ws[q] * 0.5 * (b - a) * dw * dw * rho * rho;  // d rho = rho dt
    }
  }
  out.gradient_energy = 0.5 * std::numbers::pi * e;
  out.rhs = c6 * c1_over_c0 * std::pow(2.0, alpha) * out.norm * out.gradient_energy;
  out.holds = out.lhs <= out.rhs;
  return out;
}

CantorCoverSums cantor_offcenter_sums(const DiscreteMeasure& cantor, int level, double x0, double y0) {
  if (level < 1) throw DomainError("cantor_offcenter_sums: level must be >= 1");
  CantorCoverSums out;
  std::vector<double> parents{x0};
  double len = 1.0, running = 0.0;
  for (int n = 1; n <= level; ++n) {
    const double third = len / 3.0;
    std::vector<double> next;
    for (double a : parents) {
      // removed middle third (a + third, a + 2 third); its tripled square has side len
      const double cx = a + 1.5 * third;
      const Eigen::Vector2d half = Eigen::Vector2d::Constant(0.5 * len);
      const Eigen::Vector2d c(cx, y0);
      running += mass_in_rect(cantor, c - half, c + half);
      next.push_back(a);
      next.push_back(a + 2.0 * third);
    }
    out.partial.push_back(running);
    parents.swap(next);
    len = third;
  }
  const Eigen::Vector2d c(x0 + 0.5, y0), half = Eigen::Vector2d::Constant(1.5);
  out.tripled_whole = mass_in_rect(cantor, c - half, c + half);
  return out;
}

}  // namespace clr
