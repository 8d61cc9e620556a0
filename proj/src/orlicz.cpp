#include "clr/orlicz.hpp"

#include "clr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace clr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExpCap = 700.0;

void require_nonnegative(double s, const char* what) {
  if (!(s >= 0.0)) throw DomainError(std::string(what) + ": argument must be >= 0");
}

}  // namespace

double b_function(double s) {
  require_nonnegative(s, "B");
  if (std::isinf(s)) return kInf;
  if (s < 0.1) {
    // alternating series sum_{n>=2} (-1)^n s^n / (n(n-1))
    double term = s * s, sum = 0.0;
    for (int n = 2; n < 40; ++n) {
      const double t = term / (n * (n - 1.0));
      sum += (n % 2 == 0) ? t : -t;
      if (t < 1e-18 * sum) break;
      term *= s;
    }
    return sum;
  }
  return (1.0 + s) * std::log1p(s) - s;
}

double a_function(double s) {
  require_nonnegative(s, "A");
  if (s > kExpCap) return kInf;
  if (s < 0.1) {
    double term = s * s / 2.0, sum = 0.0;
    for (int n = 2; n < 40; ++n) {
      sum += term;
      term *= s / (n + 1.0);
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  return std::expm1(s) - s;
}

NFunctionPair::NFunctionPair(std::string name, Fn psi, Fn phi)
    : name_(std::move(name)), psi_(std::move(psi)), phi_(std::move(phi)) {}

NFunctionPair NFunctionPair::llogl() { return NFunctionPair("B/A", b_function, a_function); }

NFunctionPair NFunctionPair::power(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("power pair needs 1 < p < inf");
  const double q = p / (p - 1.0);
  auto make = [](double e) {
    return [e](double s) {
      require_nonnegative(s, "power N-function");
      const double v = std::pow(s, e) / e;
      return std::isfinite(v) ? v : kInf;
    };
  };
  return NFunctionPair("power(" + std::to_string(p) + ")", make(p), make(q));
}

NFunctionPair NFunctionPair::dual() const { return NFunctionPair(name_ + "*", phi_, psi_); }

double eval_nfunction(const NFunctionPair& pair, Which which, double s) {
  require_nonnegative(s, "eval_nfunction");
  return pair(which, s);
}

double inverse_nfunction(const NFunctionPair& pair, Which which, double y, double tol) {
  if (!std::isfinite(y)) throw DomainError("inverse_nfunction: y must be finite");
  require_nonnegative(y, "inverse_nfunction");
  if (y == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (pair(which, hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw ConvergenceError("inverse_nfunction: no bracket");
  }
  const double slack = tol * std::max(1.0, y);
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = pair(which, mid);
    if (std::abs(v - y) <= slack && hi - lo <= 1e-15 * hi) return mid;
    (v < y ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  const double s = 0.5 * (lo + hi);
  if (std::abs(pair(which, s) - y) > slack * 1e3)
    throw ConvergenceError("inverse_nfunction: tolerance not reached");
  return s;
}

double binv_asymptotic(double t, BinvRegime regime) {
  if (!(t > 0.0)) throw DomainError("binv_asymptotic: t must be > 0");
  if (regime == BinvRegime::large_t) return std::sqrt(2.0 * t);
  if (t >= 1.0) throw DomainError("binv_asymptotic: small_t regime needs t < 1");
  return 1.0 / std::log(1.0 / t);
}

WeightedSamples::WeightedSamples(Eigen::VectorXd v, Eigen::VectorXd w)
    : values(std::move(v)), weights(std::move(w)) {
  if (values.size() != weights.size()) throw DomainError("WeightedSamples: size mismatch");
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0 || !std::isfinite(weights[i]) || weights[i] < 0.0)
      throw DomainError("WeightedSamples: entries must be finite and >= 0");
  }
  total_mass = weights.sum();
}

WeightedSamples WeightedSamples::subset(const std::function<bool(Eigen::Index)>& keep) const {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < size(); ++i)
    if (keep(i)) idx.push_back(i);
  Eigen::VectorXd v(idx.size()), w(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    v[k] = values[idx[k]];
    w[k] = weights[idx[k]];
  }
  return WeightedSamples(std::move(v), std::move(w));
}

WeightedSamples WeightedSamples::scaled(double t) const {
  return WeightedSamples(values * t, weights);
}

namespace {

double modular(const WeightedSamples& f, const NFunctionPair& pair, double scale) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (f.weights[i] == 0.0 || f.values[i] == 0.0) continue;
    const double v = pair(Which::psi, scale * f.values[i]);
    if (!std::isfinite(v)) return kInf;
    sum += f.weights[i] * v;
  }
  return sum;
}

bool trivially_zero(const WeightedSamples& f) {
  if (!(f.total_mass > 0.0)) return true;
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (f.values[i] > 0.0 && f.weights[i] > 0.0) return false;
  return true;
}

}  // namespace

double luxemburg_norm(const WeightedSamples& f, const NFunctionPair& pair, double tol) {
  if (f.size() == 0) throw DomainError("luxemburg_norm: empty sample");
  if (trivially_zero(f)) return 0.0;
  // S(kappa) = sum w psi(f / kappa) is decreasing in kappa.
  auto excess = [&](double kappa) { return modular(f, pair, 1.0 / kappa) > 1.0; };
  double lo = 1.0, hi = 1.0;
  if (excess(hi)) {
    while (excess(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw ConvergenceError("luxemburg_norm: no bracket");
    }
  } else {
    while (!excess(lo)) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) throw ConvergenceError("luxemburg_norm: no bracket");
    }
  }
  for (int it = 0; it < 300 && hi - lo > tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) ? lo : hi) = mid;
  }
  return hi;
}

double level_norm(const WeightedSamples& f, const NFunctionPair& pair, double a, double tol) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("level_norm: level a must be > 0");
  if (f.size() == 0 || trivially_zero(f)) return 0.0;

  auto g = [&](double logk) {
    const double k = std::exp(logk);
    const double m = modular(f, pair, k);
    return std::isfinite(m) ? (a + m) / k : kInf;
  };

  // Bracket the minimiser of g on a log scale, steps of log 4.
  const double step = std::log(4.0);
  double x = 0.0;
  double gx = g(x);
  for (int it = 0; !std::isfinite(gx); ++it) {
    if (it > 600) throw ConvergenceError("level_norm: objective infinite everywhere");
    x -= step;
    gx = g(x);
  }
  double lo = x - step, hi = x + step;
  double glo = g(lo), ghi = g(hi);
  for (int it = 0; glo < gx; ++it) {
    if (it > 600) throw ConvergenceError("level_norm: bracket expansion failed");
    hi = x, ghi = gx;
    x = lo, gx = glo;
    lo -= step;
    glo = g(lo);
  }
  for (int it = 0; ghi < gx; ++it) {
    if (it > 600) throw ConvergenceError("level_norm: bracket expansion failed");
    lo = x, glo = gx;
    x = hi, gx = ghi;
    hi += step;
    ghi = g(hi);
  }

  // Single sign change of the sampled slope inside the bracket.
  {
    constexpr int kSamples = 17;
    double prev = g(lo), prev_slope = 0.0;
    int changes = 0;
    for (int i = 1; i < kSamples; ++i) {
      const double cur = g(lo + (hi - lo) * i / (kSamples - 1));
      const double d = cur - prev;
      const double noise = 1e-12 * std::max(std::abs(cur), std::abs(prev));
      if (std::isfinite(d) && std::abs(d) > noise) {
        const double s = d > 0 ? 1.0 : -1.0;
        if (prev_slope != 0.0 && s != prev_slope) ++changes;
        prev_slope = s;
      } else if (!std::isfinite(d) && std::isinf(cur)) {
        if (prev_slope < 0.0) ++changes;
        prev_slope = 1.0;
      }
      prev = cur;
    }
    if (changes > 1) throw InvariantViolation("level_norm: objective is not unimodal on the bracket");
  }

  // Golden section on log k.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    if (gc <= gd) {
      hi = d, d = c, gd = gc;
      c = hi - inv_phi * (hi - lo);
      gc = g(c);
    } else {
      lo = c, c = d, gc = gd;
      d = lo + inv_phi * (hi - lo);
      gd = g(d);
    }
  }
  const double best = std::min({gc, gd, gx, g(0.5 * (lo + hi))});
  if (!std::isfinite(best)) throw ConvergenceError("level_norm: no finite minimum");
  return best;
}

double mixed_norm(const Eigen::MatrixXd& values, double dx, double dy, const NFunctionPair& pair,
                  SliceNorm slice, double tol) {
  if (values.size() == 0) throw DomainError("mixed_norm: empty grid");
  if (!(dx > 0.0) || !(dy > 0.0)) throw DomainError("mixed_norm: cell sizes must be > 0");
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(values.cols(), dy);
  const double level = slice == SliceNorm::average ? dy * values.cols() : 1.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    WeightedSamples s(values.row(i).transpose(), w);
    total += dx * level_norm(s, pair, level, tol);
  }
  return total;
}

double l1w_quasinorm(const Eigen::Ref<const Eigen::VectorXd>& seq) {
  std::vector<double> a(seq.size());
  for (Eigen::Index i = 0; i < seq.size(); ++i) a[i] = std::abs(seq[i]);
  std::sort(a.begin(), a.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) best = std::max(best, (k + 1.0) * a[k]);
  return best;
}

}  // namespace clr
