#include "clr/strip.hpp"

#include "clr/errors.hpp"
#include "clr/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace clr {

using std::numbers::pi;

void RobinParams::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("strip width must be finite and > 0");
  if (std::isnan(alpha) || std::isnan(beta)) throw DomainError("Robin coefficients must not be NaN");
}

const char* to_string(Region r) {
  static const char* names[] = {"A", "B", "C", "D", "E"};
  return names[static_cast<int>(r)];
}

Region region_classify(const RobinParams& p) {
  p.validate();
  if (p.left_dirichlet() || p.right_dirichlet()) throw DomainError("region_classify: needs finite alpha and beta");
  const double e = p.alpha + p.alpha * p.beta * p.a - p.beta;
  const double scale = std::max({1.0, std::abs(p.alpha), std::abs(p.beta), std::abs(p.alpha * p.beta * p.a)});
  const bool zero = std::abs(e) <= 1e-12 * scale;
  const bool below = p.alpha * p.a < 1.0;  // alpha < 1/a
  if (!zero && e > 0.0) return Region::C;
  if (zero) return below ? Region::B : Region::D;
  return below ? Region::A : Region::E;
}

int negative_count(Region r) {
  switch (r) {
    case Region::A:
    case Region::B: return 0;
    case Region::C:
    case Region::D: return 1;
    case Region::E: return 2;
  }
  return 0;
}

namespace {

// Left solution w and w' at y = a, up to a positive factor, plus the number
// of zeros of w inside (0, a).
struct EndState {
  double w = 0.0;
  double dw = 0.0;
  int zeros = 0;
};

EndState end_state(const RobinParams& p, double tau) {
  EndState st;
  const double a = p.a;
  if (tau > 0.0) {
    const double s = std::sqrt(tau);
    // modified Pruefer angle: w ~ sin(phi), w' ~ s cos(phi), phi' = s
    const double phi0 = p.left_dirichlet() ? 0.0 : std::atan2(s, -p.alpha);
    const double phi = phi0 + s * a;
    st.zeros = static_cast<int>(std::ceil(phi / pi)) - 1;
    st.w = std::sin(phi);
    st.dw = s * std::cos(phi);
  } else if (tau < 0.0) {
    const double sg = std::sqrt(-tau);
    const double t = std::tanh(sg * a);
    if (p.left_dirichlet()) {  // sinh(sg y)/sg over cosh(sg a)
      st.w = t / sg;
      st.dw = 1.0;
    } else {  // (cosh - alpha sinh/sg) over cosh(sg a)
      st.w = 1.0 - p.alpha / sg * t;
      st.dw = sg * t - p.alpha;
    }
    st.zeros = st.w < 0.0 ? 1 : 0;
  } else {
    if (p.left_dirichlet()) {
      st.w = a;
      st.dw = 1.0;
    } else {
      st.w = 1.0 - p.alpha * a;
      st.dw = -p.alpha;
    }
    st.zeros = st.w < 0.0 ? 1 : 0;
  }
  return st;
}

}  // namespace

int count_below(const RobinParams& p, double tau) {
  p.validate();
  const EndState st = end_state(p, tau);
  if (p.right_dirichlet()) return st.zeros;
  if (st.w == 0.0) return st.zeros + 1;
  const double d = st.dw + p.beta * st.w;
  return st.zeros + (st.w * d < 0.0 ? 1 : 0);
}

namespace {

struct CS {
  double c, s;  // C(a) and S(a), divided by cosh(sg a) when tau < 0
};

CS cs_at(double tau, double a) {
  if (tau > 0.0) {
    const double s = std::sqrt(tau);
    return {std::cos(s * a), std::sin(s * a) / s};
  }
  if (tau < 0.0) {
    const double sg = std::sqrt(-tau);
    return {1.0, std::tanh(sg * a) / sg};
  }
  return {1.0, a};
}

// Characteristic value and the size of the terms it is built from, taking
// |C| <= 1 and the unattenuated size of S so that a vanishing factor does not
// hide the cancellation.
std::pair<double, double> char_and_scale(const RobinParams& p, double tau) {
  const auto [c, s] = cs_at(tau, p.a);
  const double smax = tau > 0.0 ? std::min(p.a, 1.0 / std::sqrt(tau)) : std::abs(s);
  if (p.left_dirichlet() && p.right_dirichlet()) return {s, smax};
  if (p.left_dirichlet()) return {c + p.beta * s, 1.0 + std::abs(p.beta) * smax};
  if (p.right_dirichlet()) return {c - p.alpha * s, 1.0 + std::abs(p.alpha) * smax};
  const double t1 = (p.beta - p.alpha) * c, t2 = (tau + p.alpha * p.beta) * s;
  return {t1 - t2, std::abs(p.beta - p.alpha) + (std::abs(tau) + std::abs(p.alpha * p.beta)) * smax};
}

double relative_residual(const RobinParams& p, double tau) {
  const auto [d, scale] = char_and_scale(p, tau);
  if (scale == 0.0) return std::abs(d);
  return std::abs(d) / scale;
}

bool closed_form(const RobinParams& p, int k, double& tau) {
  const bool ln = !p.left_dirichlet() && p.alpha == 0.0, rn = !p.right_dirichlet() && p.beta == 0.0;
  const bool ld = p.left_dirichlet(), rd = p.right_dirichlet();
  double m;
  if (ln && rn)
    m = k - 1.0;
  else if (ld && rd)
    m = k;
  else if ((ld && rn) || (ln && rd))
    m = k - 0.5;
  else
    return false;
  tau = (m * pi / p.a) * (m * pi / p.a);
  return true;
}

double kth_eigenvalue(const RobinParams& p, int k) {
  double lo = -1.0, hi = 1.0;
  for (int it = 0; count_below(p, lo) >= k; ++it) {
    if (it > 2100) throw ConvergenceError("transverse_spectrum: no lower bracket");
    lo *= 2.0;
  }
  for (int it = 0; count_below(p, hi) < k; ++it) {
    if (it > 2100) throw ConvergenceError("transverse_spectrum: no upper bracket");
    hi *= 2.0;
  }
  for (int it = 0; it < 3000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (count_below(p, mid) >= k ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double characteristic(const RobinParams& p, double tau) {
  p.validate();
  return char_and_scale(p, tau).first;
}

double TransverseMode::raw(double y) const {
  switch (kind) {
    case ModeKind::affine: return left_dirichlet ? y : 1.0 - alpha * y;
    case ModeKind::trigonometric: {
      const double s = std::sqrt(tau);
      return left_dirichlet ? std::sin(s * y) / s : std::cos(s * y) - alpha * std::sin(s * y) / s;
    }
    case ModeKind::hyperbolic: {
      const double sg = std::sqrt(-tau);
      // w = cp e^{sg y} + cm e^{-sg y}
      const double cp = left_dirichlet ? 0.5 / sg : 0.5 * (1.0 - alpha / sg);
      const double cm = left_dirichlet ? -0.5 / sg : 0.5 * (1.0 + alpha / sg);
      return cp * std::exp(sg * y - shift) + cm * std::exp(-sg * y - shift);
    }
  }
  return 0.0;
}

double TransverseMode::operator()(double y) const { return scale * raw(y); }

double mode_norm2(const TransverseMode& u, double a, int panels) {
  if (u.kind == ModeKind::hyperbolic) {
    const double sg = std::sqrt(-u.tau);
    const double cp = u.left_dirichlet ? 0.5 / sg : 0.5 * (1.0 - u.alpha / sg);
    const double cm = u.left_dirichlet ? -0.5 / sg : 0.5 * (1.0 + u.alpha / sg);
    const double e2s = std::exp(-2.0 * u.shift);
    // integral of (cp e^{sg y} + cm e^{-sg y})^2 e^{-2 shift}
    const double grow = cp * cp * std::exp(2.0 * sg * a - 2.0 * u.shift) * (-std::expm1(-2.0 * sg * a)) / (2.0 * sg);
    const double cross = 2.0 * cp * cm * a * e2s;
    const double decay = cm * cm * e2s * (-std::expm1(-2.0 * sg * a)) / (2.0 * sg);
    return u.scale * u.scale * (grow + cross + decay);
  }
  static const double xs[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                              0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
  static const double ws[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                              0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  const double h = a / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double c = (i + 0.5) * h;
    for (int q = 0; q < 8; ++q) {
      const double w = u.raw(c + 0.5 * h * xs[q]);
      sum += ws[q] * w * w;
    }
  }
  return u.scale * u.scale * sum * 0.5 * h;
}

namespace {

TransverseMode make_mode(const RobinParams& p, double tau) {
  TransverseMode m;
  m.tau = tau;
  m.left_dirichlet = p.left_dirichlet();
  m.alpha = m.left_dirichlet ? 0.0 : p.alpha;
  m.kind = tau > 0.0 ? ModeKind::trigonometric : (tau < 0.0 ? ModeKind::hyperbolic : ModeKind::affine);
  if (m.kind == ModeKind::hyperbolic) {
    const double sg = std::sqrt(-tau);
    const double cp = m.left_dirichlet ? 0.5 / sg : 0.5 * (1.0 - m.alpha / sg);
    const double cm = m.left_dirichlet ? -0.5 / sg : 0.5 * (1.0 + m.alpha / sg);
    m.shift = std::log(std::abs(cp)) + sg * p.a > std::log(std::abs(cm)) ? sg * p.a : 0.0;
  }
  const int panels = std::clamp(static_cast<int>(std::sqrt(std::max(tau, 0.0)) * p.a), 64, 4096);
  const double n2 = mode_norm2(m, p.a, panels);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw ConvergenceError("transverse mode cannot be normalised");
  m.scale = 1.0 / std::sqrt(n2);
  return m;
}

}  // namespace

TransverseSpectrum transverse_spectrum(const RobinParams& p, int k) {
  p.validate();
  if (k < 1) throw DomainError("transverse_spectrum: k must be >= 1");
  TransverseSpectrum out;
  const bool finite = !p.left_dirichlet() && !p.right_dirichlet();
  if (finite) out.region = region_classify(p);
  for (int j = 1; j <= k; ++j) {
    double tau;
    if (!closed_form(p, j, tau)) {
      tau = kth_eigenvalue(p, j);
      if (finite && std::abs(tau) <= 1e-9 && out.region && (*out.region == Region::B || *out.region == Region::D))
        tau = 0.0;
    }
    const double res = relative_residual(p, tau);
    if (res > 1e-8) throw ConvergenceError("transverse_spectrum: residual " + std::to_string(res) + " too large");
    if (!out.taus.empty() && !(tau - out.taus.back() > 1e-12 * std::max(1.0, std::abs(tau))))
      throw ConvergenceError("transverse_spectrum: eigenvalues not separated");
    out.taus.push_back(tau);
    out.residuals.push_back(res);
    out.modes.push_back(make_mode(p, tau));
  }
  return out;
}

Lambda12 lambda12(const RobinParams& p) {
  const auto spec = transverse_spectrum(p, 2);
  Lambda12 out;
  out.lambda1 = spec.taus[0];
  out.lambda2 = std::min(spec.taus[1], spec.taus[0] + pi * pi);
  if (!(out.lambda2 - out.lambda1 > 1e-12 * std::max(1.0, std::abs(out.lambda1))))
    throw DomainError("lambda12: lambda2 coincides with lambda1");
  out.u1 = spec.modes[0];
  return out;
}

namespace {

void check_strip_grid(const DiscreteMeasure& mu, double a) {
  if (!mu.is_grid()) throw DomainError("strip terms: measure must be a grid");
  const auto& g = *mu.grid();
  if (std::abs(g.origin.y()) > 1e-9 * a || std::abs(g.ny() * g.cell.y() - a) > 1e-9 * a)
    throw DomainError("strip terms: grid must span 0 <= x2 <= a exactly");
}

int cell_index(double x1) { return static_cast<int>(std::floor(x1)); }

TermSeries unit_cell_mixed(const PotentialField& V, const DiscreteMeasure& mu) {
  const auto& g = *mu.grid();
  std::map<int, std::vector<Eigen::Index>> cols;
  for (Eigen::Index i = 0; i < g.nx(); ++i) cols[cell_index(g.center(i, 0).x())].push_back(i);
  const auto pair = NFunctionPair::llogl();
  TermSeries D;
  D.name = "D";
  D.geometry = "unit cells S_n = (n, n+1) x (0, a), mixed norm";
  for (const auto& [n, idx] : cols) {
    Eigen::MatrixXd vals(idx.size(), g.ny());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (Eigen::Index j = 0; j < g.ny(); ++j) vals(r, j) = V[g.flat(idx[r], j)];
    D.terms.push_back({n, double(n), n + 1.0, mixed_norm(vals, g.cell.x(), g.cell.y(), pair)});
  }
  return D;
}

}  // namespace

StripNeumannTerms strip_terms_neumann(const PotentialField& V, const DiscreteMeasure& mu, double a) {
  V.check_aligned(mu);
  check_strip_grid(mu, a);
  if (!mu.is_lebesgue(1e-9)) throw DomainError("strip_terms_neumann: needs a Lebesgue grid");
  Eigen::VectorXd x(mu.size()), m(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    x[k] = mu.point(k).x();
    m[k] = V[k] * mu.mass(k);
  }
  StripNeumannTerms out;
  out.A = weighted_terms_1d(LineMeasure::from_atoms(x, m));
  out.A.geometry = "dyadic I_n x (0, a), |x1|-weighted for n != 0";
  out.D = unit_cell_mixed(V, mu);
  return out;
}

StripRobinTerms strip_terms_robin(const PotentialField& V, const DiscreteMeasure& mu, const RobinParams& p) {
  V.check_aligned(mu);
  const Lambda12 l12 = lambda12(p);
  StripRobinTerms out;
  const LineMeasure nu = transverse_projection(V, mu, l12.u1, p.a);
  out.F = weighted_terms_1d(nu);
  out.F.name = "F";
  out.F.geometry = "dyadic I_n x (0, a), weighted by |u1(x2)|^2";

  std::map<int, std::vector<Eigen::Index>> cells;
  for (Eigen::Index k = 0; k < mu.size(); ++k) cells[cell_index(mu.point(k).x())].push_back(k);
  const auto pair = NFunctionPair::llogl();
  out.M.name = "M";
  out.M.geometry = "unit cells S_n = (n, n+1) x (0, a), Orlicz norm";
  for (const auto& [n, idx] : cells) {
    Eigen::VectorXd v(idx.size()), w(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) v[r] = V[idx[r]], w[r] = mu.mass(idx[r]);
    out.M.terms.push_back({n, double(n), n + 1.0, orlicz_norm(WeightedSamples(v, w), pair)});
  }
  if (mu.is_lebesgue(1e-9)) {
    check_strip_grid(mu, p.a);
    out.D = unit_cell_mixed(V, mu);
  }
  return out;
}

BoundReport bound_strip_neumann(const StripNeumannTerms& terms, const ConstantSet& constants) {
  BoundReport r;
  r.theorem = "gest2";
  r.series = {terms.A, terms.D};
  r.constants = constants;
  r.parts.push_back({"radial part", "A", PartKind::sqrt_sum, "coef", "thresh", true, {}, 0.0});
  r.parts.push_back({"Orlicz part", "D", PartKind::linear_sum, "C", "c", true, {}, 0.0});
  evaluate(r);
  if (r.indicative) r.notes.push_back("Orlicz sum is up to an unspecified constant");
  return r;
}

BoundReport bound_strip_robin(const StripRobinTerms& terms, std::optional<ConstantSet> constants) {
  BoundReport r;
  const bool mixed = terms.D.has_value();
  r.theorem = mixed ? "radest4" : "rbtheqn";
  r.constants = constants ? *constants : default_constants(mixed ? Theorem::radest4 : Theorem::rbtheqn);
  r.series = {terms.F, mixed ? *terms.D : terms.M};
  r.parts.push_back({"radial part", "F", PartKind::sqrt_sum, "coef", "thresh", true, {}, 0.0});
  r.parts.push_back({"Orlicz part", r.series[1].name, PartKind::linear_sum, "C", "c", true, {}, 0.0});
  r.notes.push_back(mixed ? "Lebesgue grid: mixed-norm D_n path" : "general measure: Orlicz-norm M_n path");
  evaluate(r);
  if (r.indicative) r.notes.push_back("Orlicz sum is up to an unspecified constant");
  return r;
}

}  // namespace clr
