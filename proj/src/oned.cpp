#include "clr/oned.hpp"

#include "clr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace clr {

std::pair<double, double> DyadicDecomposition::interval(int n) {
  if (n == 0) return {-1.0, 1.0};
  const int m = std::abs(n);
  const double a = std::ldexp(1.0, m - 1), b = std::ldexp(1.0, m);
  return n > 0 ? std::make_pair(a, b) : std::make_pair(-b, -a);
}

int DyadicDecomposition::index_of(double x) {
  const double ax = std::abs(x);
  if (!std::isfinite(ax)) throw DomainError("dyadic index of a non-finite point");
  if (ax <= 1.0) return 0;
  int e = 0;
  const double m = std::frexp(ax, &e);  // ax = m 2^e, m in [1/2, 1)
  const int n = (m == 0.5) ? e - 1 : e;
  return x > 0 ? n : -n;
}

DyadicDecomposition DyadicDecomposition::covering(double lo, double hi) {
  DyadicDecomposition d;
  d.n_min = std::min(0, index_of(lo));
  d.n_max = std::max(0, index_of(hi));
  return d;
}

double c_kappa(double kappa, double a, double b) {
  if (!(kappa > 0.0)) throw DomainError("c_kappa: kappa must be > 0");
  if (!(a > 0.0) || !(a < b)) throw DomainError("c_kappa: need 0 < a < b");
  const double s = std::sqrt(1.0 + 4.0 * kappa);
  const double r = std::pow(a / b, s);
  return (1.0 + s * (1.0 + r) / (1.0 - r)) / (2.0 * kappa);
}

double phi_kappa(double kappa) {
  if (!(kappa > 0.0)) throw DomainError("phi_kappa: kappa must be > 0");
  const double s = std::sqrt(4.0 * kappa + 1.0);
  const double r = std::exp2(-s);
  return 2.0 * kappa / (4.0 * kappa + 1.0) / (1.0 + s * (1.0 + r) / (1.0 - r));
}

KappaCalculus kappa_calculus(double kappa) { return {kappa, phi_kappa(kappa), c_kappa(kappa, 1.0, 2.0)}; }

KappaOptimum optimize_phi(double tol) {
  if (!(tol > 0.0)) throw DomainError("optimize_phi: tol must be > 0");
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.01, hi = 100.0;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = phi_kappa(c), fd = phi_kappa(d);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d, d = c, fd = fc;
      c = hi - g * (hi - lo);
      fc = phi_kappa(c);
    } else {
      lo = c, c = d, fc = fd;
      d = lo + g * (hi - lo);
      fd = phi_kappa(d);
    }
  }
  const double k = 0.5 * (lo + hi);
  return {k, phi_kappa(k)};
}

TermSeries weighted_terms_1d(const LineMeasure& nu, const DyadicDecomposition& dec) {
  if (dec.n_min > 0 || dec.n_max < 0) throw DomainError("weighted_terms_1d: range must contain n = 0");
  std::map<int, double> acc;
  for (int n = dec.n_min; n <= dec.n_max; ++n) acc[n] = 0.0;
  TermSeries out;
  out.name = "A";
  out.geometry = "dyadic intervals I_n, |x|-weighted for n != 0";
  const auto& x = nu.atom_positions();
  const auto& m = nu.atom_masses();
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (m[k] == 0.0) continue;
    const int n = DyadicDecomposition::index_of(x[k]);
    if (n < dec.n_min || n > dec.n_max) {
      out.omitted += m[k];
      continue;
    }
    acc[n] += (n == 0 ? 1.0 : std::abs(x[k])) * m[k];
  }
  if (nu.has_density()) {
    const double covered = nu.density_mass(DyadicDecomposition::interval(dec.n_min).first,
                                           DyadicDecomposition::interval(dec.n_max).second);
    out.omitted += nu.density_masses().sum() - covered;
    for (int n = dec.n_min; n <= dec.n_max; ++n) {
      const auto [lo, hi] = DyadicDecomposition::interval(n);
      acc[n] += n == 0 ? nu.density_mass(lo, hi) : nu.density_abs_moment(lo, hi);
    }
  }
  for (const auto& [n, v] : acc) {
    const auto [lo, hi] = DyadicDecomposition::interval(n);
    out.terms.push_back({n, lo, hi, v});
  }
  return out;
}

namespace {

void check_terms(const TermSeries& t) {
  for (const auto& term : t.terms)
    if (!(term.value >= 0.0)) throw InvariantViolation("negative or NaN term in series " + t.name);
}

}  // namespace

BoundReport bound_1d_general(const TermSeries& terms, double kappa) {
  check_terms(terms);
  BoundReport r;
  r.theorem = "xgenest";
  r.series.push_back(terms);
  r.constants = default_constants(Theorem::xgenest);
  recompute_from_kappa(r.constants, Theorem::xgenest, kappa);
  if (std::abs(kappa - optimize_phi().kappa) < 1e-9) r.constants.put("kappa", kappa, Provenance::stated,
                                                                     "maximiser of Phi(kappa)");
  r.parts.push_back({"ceil part", terms.name, PartKind::ceil_sqrt_nonzero, "coef", "thresh", true, {}, 0.0});
  r.parts.push_back({"centre part", terms.name, PartKind::sqrt_zero, "coef", "thresh", true, {}, 0.0});
  evaluate(r);
  return r;
}

BoundReport bound_1d(const TermSeries& terms, const ConstantSet& constants) {
  check_terms(terms);
  BoundReport r;
  r.theorem = "est1";
  r.series.push_back(terms);
  r.constants = constants;
  r.parts.push_back({"radial part", terms.name, PartKind::sqrt_sum, "coef", "thresh", true, {}, 0.0});
  evaluate(r);
  return r;
}

namespace {

double nu_of(const LineMeasure& nu, double lo, double hi) { return nu.density_mass(lo, hi); }

}  // namespace

std::vector<double> partition_interval(const LineMeasure& nu, double lo, double hi, int n, double a_exp) {
  if (n < 1) throw DomainError("partition_interval: n must be >= 1");
  if (!(a_exp > 0.0)) throw DomainError("partition_interval: exponent must be > 0");
  if (!(hi > lo)) throw DomainError("partition_interval: empty interval");
  if (nu.has_atoms())
    throw DomainError("partition_interval: measure has atoms; smooth it with mollify_measure first");
  std::vector<double> breaks;
  double right = hi;
  for (int m = n; m > 1; --m) {
    const double len = right - lo;
    const double mass = nu_of(nu, lo, right);
    if (!(mass > 0.0)) break;  // nothing left to split; remaining pieces carry no mass
    // aim slightly below the bound so that re-evaluating a piece cannot round above it
    const double target = std::pow(len, a_exp) * std::pow(static_cast<double>(m), -1.0 - a_exp) * mass *
                          (1.0 - 64.0 * std::numeric_limits<double>::epsilon());
    auto g = [&](double x) { return std::pow(right - x, a_exp) * nu_of(nu, x, right); };
    // g decreases from g(lo) = len^a * mass > target to g(right) = 0.
    double a = lo, b = right;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      (g(mid) > target ? a : b) = mid;
    }
    breaks.push_back(b);
    right = b;
  }
  std::reverse(breaks.begin(), breaks.end());
  // When mass runs out early, spread the remaining breakpoints over the empty left part.
  while (static_cast<int>(breaks.size()) < n - 1) {
    const double first = breaks.empty() ? hi : breaks.front();
    breaks.insert(breaks.begin(), lo + 0.5 * (first - lo));
  }
  return breaks;
}

double partition_quality(const LineMeasure& nu, double lo, double hi, const std::vector<double>& breaks,
                         double a_exp) {
  double prev = lo, best = 0.0;
  std::vector<double> ends = breaks;
  ends.push_back(hi);
  for (double t : ends) {
    best = std::max(best, std::pow(t - prev, a_exp) * nu_of(nu, prev, t));
    prev = t;
  }
  return best;
}

namespace {

double bump(double t) { return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

// Integral of the unnormalised bump over [p, q] within [-1, 1], 8-point Gauss-Legendre.
double bump_integral(double p, double q) {
  static const double xs[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                              0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
  static const double ws[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                              0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  p = std::max(p, -1.0);
  q = std::min(q, 1.0);
  if (!(q > p)) return 0.0;
  const double c = 0.5 * (p + q), h = 0.5 * (q - p);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += ws[i] * bump(c + h * xs[i]);
  return s * h;
}

}  // namespace

LineMeasure mollify_measure(const LineMeasure& nu, double eps) {
  if (!(eps > 0.0)) throw DomainError("mollify_measure: eps must be > 0");
  if (!(nu.total_mass() > 0.0)) return LineMeasure::from_density(0.0, eps / 16.0, Eigen::VectorXd::Zero(1));
  const auto [slo, shi] = nu.support();
  const double lo = slo - eps, hi = shi + eps;
  const Eigen::Index cells = static_cast<Eigen::Index>(std::ceil((hi - lo) / (eps / 16.0)));
  const double h = (hi - lo) / cells;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(cells);

  auto spread = [&](double y, double m) {
    if (m == 0.0) return;
    const Eigen::Index k0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::floor((y - eps - lo) / h)));
    const Eigen::Index k1 = std::min<Eigen::Index>(cells - 1, static_cast<Eigen::Index>(std::floor((y + eps - lo) / h)));
    std::vector<double> w;
    double total = 0.0;
    for (Eigen::Index k = k0; k <= k1; ++k) {
      const double a = (lo + k * h - y) / eps, b = (lo + (k + 1) * h - y) / eps;
      w.push_back(bump_integral(a, b));
      total += w.back();
    }
    for (Eigen::Index k = k0; k <= k1; ++k) out[k] += m * w[k - k0] / total;
  };

  const auto& x = nu.atom_positions();
  const auto& m = nu.atom_masses();
  for (Eigen::Index k = 0; k < x.size(); ++k) spread(x[k], m[k]);
  if (nu.has_density()) {
    const auto& dm = nu.density_masses();
    const double s = nu.density_step();
    const int q = std::max(1, static_cast<int>(std::ceil(2.0 * s / h)));
    for (Eigen::Index k = 0; k < dm.size(); ++k)
      for (int j = 0; j < q; ++j) spread(nu.density_origin() + (k + (j + 0.5) / q) * s, dm[k] / q);
  }
  return LineMeasure::from_density(lo, h, std::move(out));
}

}  // namespace clr
