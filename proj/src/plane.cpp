#include "clr/plane.hpp"

#include "clr/errors.hpp"
#include "clr/oned.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace clr {

RingDecomposition RingDecomposition::Q(double c0, double c1, double alpha) {
  if (!(c0 > 0.0) || !(c1 > 0.0)) throw DomainError("Q rings: Ahlfors constants must be > 0");
  if (!(alpha > 0.0) || alpha > 2.0) throw DomainError("Q rings: alpha must lie in (0, 2]");
  if (!(2.0 * c1 > c0)) throw DomainError("Q rings: need c0 < 2 c1 (ring ratio must exceed 1)");
  return {RingKind::ahlfors_Q, c0, c1, alpha};
}

std::pair<double, double> RingDecomposition::interval(int n) const {
  switch (kind) {
    case RingKind::exp_dyadic_J: {
      const auto [lo, hi] = DyadicDecomposition::interval(n);
      return {std::exp(lo), std::exp(hi)};
    }
    case RingKind::exp_unit_Omega:
      return {std::exp(double(n)), std::exp(n + 1.0)};
    case RingKind::ahlfors_Q: {
      const double l = std::log(2.0 * c1 / c0) / alpha;
      return {std::exp((n - 1) * l), std::exp(n * l)};
    }
  }
  return {0.0, 0.0};
}

namespace {

// Snap t to an integer k when within a few ulps, so exact ring radii stay exact.
double snap(double t) {
  const double k = std::round(t);
  return std::abs(t - k) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)) ? k : t;
}

// Index of the unit interval [k, k+1) holding t with shared endpoints
// going to the smaller |index| (offset by `shift`).
int unit_index(double t, int shift) {
  t = snap(t);
  const double f = std::floor(t);
  int n = static_cast<int>(f) + shift;
  if (t == f && std::abs(n - 1) < std::abs(n)) n -= 1;
  return n;
}

}  // namespace

int RingDecomposition::index_of(double r) const {
  if (!(r > 0.0)) throw DomainError("ring index needs r > 0");
  const double t = std::log(r);
  switch (kind) {
    case RingKind::exp_dyadic_J: {
      const double ts = std::abs(t) > 1.0 ? std::copysign(std::exp2(snap(std::log2(std::abs(t)))), t) : t;
      return DyadicDecomposition::index_of(ts);
    }
    case RingKind::exp_unit_Omega:
      return unit_index(t, 0);
    case RingKind::ahlfors_Q:
      return unit_index(t * alpha / std::log(2.0 * c1 / c0), 1);
  }
  return 0;
}

TermSeries weighted_terms_plane(const PotentialField& V, const DiscreteMeasure& mu) {
  V.check_aligned(mu);
  const auto rings = RingDecomposition::J();
  std::map<int, double> acc;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double vm = V[k] * mu.mass(k);
    if (vm == 0.0) continue;
    const double r = mu.point(k).norm();
    if (r == 0.0) throw DomainError("weighted_terms_plane: mass with V > 0 at the origin");
    const int n = rings.index_of(r);
    acc[n] += (n == 0 ? 1.0 : std::abs(std::log(r))) * vm;
  }
  TermSeries G;
  G.name = "G";
  G.geometry = "rings J_n in |x|, |ln|x||-weighted for n != 0";
  if (acc.empty()) acc[0] = 0.0;
  for (int n = std::min(0, acc.begin()->first); n <= std::max(0, acc.rbegin()->first); ++n) {
    const auto [lo, hi] = rings.interval(n);
    G.terms.push_back({n, lo, hi, acc.count(n) ? acc[n] : 0.0});
  }
  return G;
}

TermSeries orlicz_terms_plane(const PotentialField& V, const DiscreteMeasure& mu, double c0, double c1,
                              double alpha) {
  V.check_aligned(mu);
  const auto rings = RingDecomposition::Q(c0, c1, alpha);
  std::map<int, std::vector<Eigen::Index>> members;
  std::vector<Eigen::Index> at_origin;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (mu.mass(k) == 0.0) continue;
    const double r = mu.point(k).norm();
    if (r == 0.0)
      at_origin.push_back(k);
    else
      members[rings.index_of(r)].push_back(k);
  }
  if (!at_origin.empty()) {
    const int n0 = members.empty() ? 0 : members.begin()->first;
    auto& v = members[n0];
    v.insert(v.end(), at_origin.begin(), at_origin.end());
  }
  TermSeries D;
  D.name = "D";
  D.geometry = "Ahlfors rings Q_n, average norm";
  const double min_width = mu.is_grid() ? 2.0 * mu.grid()->cell.maxCoeff() : 0.0;
  const auto pair = NFunctionPair::llogl();
  std::vector<std::string> merges;
  auto it = members.begin();
  while (it != members.end()) {
    const int first = it->first;
    double lo = rings.interval(first).first, hi = rings.interval(first).second;
    std::vector<Eigen::Index> idx = it->second;
    ++it;
    int last = first;
    while (hi - lo < min_width && it != members.end()) {
      idx.insert(idx.end(), it->second.begin(), it->second.end());
      last = it->first;
      hi = rings.interval(last).second;
      ++it;
    }
    if (last != first) merges.push_back(std::to_string(first) + ".." + std::to_string(last));
    Eigen::VectorXd v(idx.size()), w(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) v[r] = V[idx[r]], w[r] = mu.mass(idx[r]);
    D.terms.push_back({first, lo, hi, average_norm(WeightedSamples(v, w), pair)});
  }
  if (!merges.empty()) {
    D.geometry += "; merged rings";
    for (const auto& m : merges) D.geometry += " " + m;
  }
  return D;
}

BoundReport bound_plane_measure(const TermSeries& G, const TermSeries& D, const ConstantSet& constants) {
  BoundReport r;
  r.theorem = "mainthm";
  r.series = {G, D};
  r.constants = constants;
  r.parts.push_back({"radial part", G.name, PartKind::sqrt_sum, "coef", "thresh", true, {}, 0.0});
  r.parts.push_back({"Orlicz part", D.name, PartKind::linear_sum, "C", "c", true, {}, 0.0});
  evaluate(r);
  if (r.indicative) r.notes.push_back("Orlicz sum is up to an unspecified constant");
  return r;
}

namespace {

double sample_grid(const CellGrid& g, const PotentialField& V, const Eigen::Vector2d& p) {
  const double fi = std::floor((p.x() - g.origin.x()) / g.cell.x());
  const double fj = std::floor((p.y() - g.origin.y()) / g.cell.y());
  if (fi < 0 || fj < 0 || fi >= g.nx() || fj >= g.ny()) return 0.0;
  return V[g.flat(static_cast<Eigen::Index>(fi), static_cast<Eigen::Index>(fj))];
}

}  // namespace

TermSeries polar_terms_plane(const PotentialField& V, const DiscreteMeasure& mu, SliceNorm angular) {
  V.check_aligned(mu);
  if (!mu.is_lebesgue(1e-9)) throw DomainError("polar terms need a Lebesgue grid");
  const CellGrid& g = *mu.grid();
  const double h = g.cell.minCoeff();
  double rmax = 0.0;
  for (double cx : {g.origin.x(), g.origin.x() + g.nx() * g.cell.x()})
    for (double cy : {g.origin.y(), g.origin.y() + g.ny() * g.cell.y()}) rmax = std::max(rmax, std::hypot(cx, cy));
  const int n_hi = static_cast<int>(std::floor(std::log(rmax)));
  const int n_lo = std::min(n_hi, static_cast<int>(std::floor(std::log(h / 4.0))));
  const auto pair = NFunctionPair::llogl();
  TermSeries out;
  out.name = "Dpolar";
  out.geometry = std::string("rings e^n < |x| < e^{n+1}, angular ") +
                 (angular == SliceNorm::average ? "average" : "plain") + " norm integrated r dr";
  for (int n = n_lo; n <= n_hi; ++n) {
    // the innermost ring absorbs the disc below it
    const double lo = n == n_lo ? 0.0 : std::exp(double(n));
    const double hi = std::min(std::exp(n + 1.0), rmax);
    const int nr = std::max(8, static_cast<int>(std::ceil((hi - lo) / (0.5 * h))));
    const double dr = (hi - lo) / nr;
    double acc = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double r = lo + (i + 0.5) * dr;
      const int nt = std::max(64, static_cast<int>(std::ceil(4.0 * std::numbers::pi * r / h)));
      Eigen::VectorXd vals(nt);
      for (int j = 0; j < nt; ++j) {
        const double th = -std::numbers::pi + (j + 0.5) * 2.0 * std::numbers::pi / nt;
        vals[j] = sample_grid(g, V, Eigen::Vector2d(r * std::cos(th), r * std::sin(th)));
      }
      WeightedSamples s(vals, Eigen::VectorXd::Constant(nt, 2.0 * std::numbers::pi / nt));
      const double level = angular == SliceNorm::average ? 2.0 * std::numbers::pi : 1.0;
      acc += level_norm(s, pair, level) * r * dr;
    }
    out.terms.push_back({n, lo, hi, acc});
  }
  return out;
}

BoundReport bound_plane_lebesgue(const PotentialField& V, const DiscreteMeasure& mu,
                                 const PlaneLebesgueOptions& options, const ConstantSet& constants) {
  if (!mu.is_lebesgue(1e-9)) throw DomainError("bound_plane_lebesgue: needs a Lebesgue grid");
  TermSeries A = weighted_terms_plane(V, mu);
  A.name = "A";
  A.geometry = "rings U_n in |x|, |ln|x||-weighted for n != 0";
  BoundReport r;
  r.theorem = "laptnetrsol";
  r.series = {A, polar_terms_plane(V, mu, options.angular)};
  r.constants = constants;
  r.parts.push_back({"radial part", "A", PartKind::sqrt_sum, "coef", "thresh", true, {}, 0.0});
  r.parts.push_back({"Orlicz part", "Dpolar", PartKind::linear_sum, "C", "c", true, {}, 0.0});
  if (options.radial) {
    r.parts.pop_back();
    r.notes.push_back("radial potential: Orlicz sum dropped; polar terms are still reported");
  }
  evaluate(r);
  if (r.indicative) r.notes.push_back("Orlicz sum is up to an unspecified constant");
  return r;
}

KhuriValue khuri_bound(const PotentialField& V, const DiscreteMeasure& mu) {
  if (!mu.is_grid()) throw DomainError("khuri_bound: needs a grid measure");
  const RearrangedProfile prof = spherical_rearrangement(V, mu);
  KhuriValue out;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double r = mu.point(k).norm();
    out.weighted += V[k] * std::log(2.0 + r) * mu.mass(k);
    if (r < 1.0 && r > 0.0) out.core += prof.cell_values[k] * std::log(1.0 / r) * mu.mass(k);
  }
  out.functional = out.weighted + out.core;
  out.constants = default_constants(Theorem::khuri);
  return out;
}

}  // namespace clr
