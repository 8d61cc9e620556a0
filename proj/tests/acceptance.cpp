// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "clr/cover.hpp"
#include "clr/measure.hpp"
#include "clr/oned.hpp"
#include "clr/oracle.hpp"
#include "clr/orlicz.hpp"
#include "clr/plane.hpp"
#include "clr/strip.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace clr;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %s  [%.2f s]  %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

WeightedSamples random_samples(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::lognormal_distribution<double> big(0.0, 1.5);
  Eigen::VectorXd v(n), w(n);
  for (int i = 0; i < n; ++i) {
    v[i] = u(rng) < 0.15 ? 0.0 : big(rng);
    w[i] = 0.05 + u(rng);
  }
  return WeightedSamples(v, w);
}

LineMeasure random_density(std::mt19937_64& rng, double lo, double hi, int cells) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd m(cells);
  for (int i = 0; i < cells; ++i) m[i] = u(rng) < 0.2 ? 0.0 : std::pow(u(rng), 3) * (hi - lo) / cells;
  if (m.sum() == 0.0) m[0] = 1.0;
  return LineMeasure::from_density(lo, (hi - lo) / cells, m);
}

// ---- criterion 9 helpers ---------------------------------------------------

struct Case9 {
  std::string name;
  double explicit_part = 0.0;
  int count_h = 0;
  int count_h2 = 0;
};

double max_abs(const LineMeasure& nu) {
  const auto [lo, hi] = nu.support();
  return std::max(std::abs(lo), std::abs(hi));
}

std::pair<int, int> line_counts(const LineMeasure& nu, double coupling) {
  const double L = 2.0 * max_abs(nu) + 2.0;
  const double h = L / 1000.0;
  return {oracle_1d(nu, -L, L, h, coupling).count_below, oracle_1d(nu, -L, L, h / 2, coupling).count_below};
}

std::pair<int, int> radial_counts(const PotentialField& V, const DiscreteMeasure& mu) {
  double rmax = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k)
    if (V[k] * mu.mass(k) > 0.0) rmax = std::max(rmax, mu.point(k).norm());
  const LineMeasure nu = radial_projection(V, mu);
  const double R = 2.0 * rmax + 1.0;
  const double h = R / 4000.0;
  return {oracle_radial(nu, R, h, 2.0).count_below, oracle_radial(nu, R, h / 2, 2.0).count_below};
}

std::pair<int, int> projected_counts(const PotentialField& V, const DiscreteMeasure& mu, const RobinParams& p) {
  const Lambda12 l12 = lambda12(p);
  return line_counts(transverse_projection(V, mu, l12.u1, p.a), 2.0);
}

DiscreteMeasure atoms(const std::vector<std::array<double, 3>>& pts) {
  Eigen::Matrix2Xd p(2, pts.size());
  Eigen::VectorXd m(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    p.col(k) << pts[k][0], pts[k][1];
    m[k] = pts[k][2];
  }
  return DiscreteMeasure::from_atoms(p, m);
}

std::vector<Case9> build_cases() {
  std::vector<Case9> out;
  const double kstar = optimize_phi().kappa;
  auto add_line = [&](const std::string& name, const LineMeasure& nu) {
    const TermSeries t = weighted_terms_1d(nu);
    const auto [c1, c2] = line_counts(nu, 2.0);
    out.push_back({name + " (est1)", bound_1d(t).explicit_part, c1, c2});
    out.push_back({name + " (xgenest)", bound_1d_general(t, kstar).explicit_part, c1, c2});
  };
  add_line("line atom at 3", LineMeasure::from_atoms(Eigen::VectorXd::Constant(1, 3.0), Eigen::VectorXd::Ones(1)));
  {
    Eigen::VectorXd x(4), m(4);
    x << -6.0, -0.5, 2.0, 9.0;
    m << 2.0, 4.0, 1.5, 3.0;
    add_line("line four atoms", LineMeasure::from_atoms(x, m));
  }
  add_line("line well c=20 on [-1,1]", LineMeasure::uniform(-1, 1, 20.0, 64));
  {
    const int n = 400;
    Eigen::VectorXd m(n);
    for (int i = 0; i < n; ++i) {
      const double x = -20.0 + (i + 0.5) * 0.1;
      m[i] = 0.1 * 6.0 / (1.0 + x * x);
    }
    add_line("line density 6/(1+x^2)", LineMeasure::from_density(-20.0, 0.1, m));
  }

  // strips
  {
    const double a = 1.0, h = 1.0 / 16;
    const auto mu = DiscreteMeasure::lebesgue({-4, 0}, {h, h}, 128, 16);
    const auto V = PotentialField::sampled(mu, [](const Eigen::Vector2d& x) {
      return 12.0 * std::exp(-x.x() * x.x()) * (1.0 + x.y());
    });
    const RobinParams neu{0, 0, a};
    const auto [c1, c2] = projected_counts(V, mu, neu);
    out.push_back({"strip Neumann grid (gest2)", bound_strip_neumann(strip_terms_neumann(V, mu, a)).explicit_part, c1, c2});
    const RobinParams rob{1.0, -0.5, a};
    auto rt = strip_terms_robin(V, mu, rob);
    rt.D.reset();
    const auto [r1, r2] = projected_counts(V, mu, rob);
    out.push_back({"strip Robin grid (rbtheqn)", bound_strip_robin(rt).explicit_part, r1, r2});
    const RobinParams dir{RobinParams::dirichlet, RobinParams::dirichlet, a};
    auto dt = strip_terms_robin(V.scaled(3.0), mu, dir);
    dt.D.reset();
    const auto [d1, d2] = projected_counts(V.scaled(3.0), mu, dir);
    out.push_back({"strip Dirichlet grid (rbtheqn)", bound_strip_robin(dt).explicit_part, d1, d2});
  }
  {
    const auto mu = atoms({{-3.0, 0.3, 2.0}, {0.5, 0.5, 5.0}, {4.0, 0.9, 1.0}, {7.5, 0.1, 3.0}});
    const auto V = PotentialField::constant(mu, 2.0);
    const RobinParams rob{-1.0, 2.0, 1.0};
    const auto [r1, r2] = projected_counts(V, mu, rob);
    out.push_back({"strip Robin atoms (rbtheqn)", bound_strip_robin(strip_terms_robin(V, mu, rob)).explicit_part, r1, r2});
  }

  // plane
  auto add_plane = [&](const std::string& name, const PotentialField& V, const DiscreteMeasure& mu) {
    const TermSeries G = weighted_terms_plane(V, mu);
    const BoundReport r = bound_plane_measure(G, TermSeries{"D", "", {}, 0.0});
    const auto [c1, c2] = radial_counts(V, mu);
    out.push_back({name, r.explicit_part, c1, c2});
  };
  {
    const double h = 1.0 / 32;
    const auto mu = DiscreteMeasure::lebesgue({-2, -2}, {h, h}, 128, 128);
    add_plane("plane radial disc (mainthm)",
              PotentialField::sampled(mu, [](const Eigen::Vector2d& x) { return x.norm() < 1.0 ? 8.0 : 0.0; }), mu);
    add_plane("plane off-centre bump (mainthm)", PotentialField::sampled(mu, [](const Eigen::Vector2d& x) {
                return 15.0 * std::exp(-4.0 * ((x.x() - 0.6) * (x.x() - 0.6) + 2.0 * x.y() * x.y()));
              }), mu);
  }
  {
    const auto mu = atoms({{0.5, 0.0, 1.0}, {3.0, 4.0, 6.0}, {-20.0, 1.0, 2.0}, {0.05, -0.05, 0.5}});
    add_plane("plane atoms (mainthm)", PotentialField::constant(mu, 1.5), mu);
  }
  {
    const auto mu = cantor_measure(7, 1.0, 0.5);
    add_plane("plane Cantor segment (mainthm)", PotentialField::constant(mu, 10.0), mu);
  }
  return out;
}

}  // namespace

int main() {
  std::printf("acceptance criteria\n");

  report(1, "Phi(kappa) optimum", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto opt = optimize_phi();
    const double secs = seconds_since(t0);
    const double prod = std::sqrt((4 * opt.kappa + 1) * opt.phi);
    const bool ok = std::abs(opt.kappa - 1.559) <= 0.01 && std::abs(opt.phi - 0.092) <= 0.001 &&
                    std::abs(prod - 0.816) <= 0.005 && secs < 1.0;
    return Outcome{ok, fmt("kappa* = %.6f, Phi* = %.6f, sqrt((4k+1)Phi) = %.6f", opt.kappa, opt.phi, prod)};
  });

  report(2, "level norm of 1 equals A^{-1}(1) mu(Omega)", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto pair = NFunctionPair::llogl();
    const double ainv = inverse_nfunction(pair, Which::phi, 1.0);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-4, 4);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double mass = std::pow(10.0, u(rng));
      const int n = 1 + trial % 7;
      const WeightedSamples f(Eigen::VectorXd::Ones(n), Eigen::VectorXd::Constant(n, mass / n));
      const double got = level_norm(f, pair, f.total_mass);
      worst = std::max(worst, std::abs(got / (ainv * f.total_mass) - 1.0));
    }
    const double secs = seconds_since(t0);
    return Outcome{worst <= 1e-8 && secs < 1.0, fmt("A^{-1}(1) = %.10f, worst relative error %.3g", ainv, worst)};
  });

  report(3, "Luxemburg/Orlicz sandwich", [] {
    const auto pair = NFunctionPair::llogl();
    std::mt19937_64 rng(3);
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = random_samples(rng, 1 + trial % 40);
      const double lux = luxemburg_norm(f, pair), orl = orlicz_norm(f, pair);
      const double slack = 1e-9 * std::max(1.0, orl);
      if (!(lux <= orl + slack && orl <= 2 * lux + slack)) ++bad;
    }
    return Outcome{bad == 0, fmt("%.0f violations in 100 samples", bad)};
  });

  report(4, "superadditivity of the average norm", [] {
    const auto pair = NFunctionPair::llogl();
    std::mt19937_64 rng(4);
    int bad = 0;
    double worst = -1e300;
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = random_samples(rng, 10 + trial % 50);
      const int parts = 2 + trial % 6;
      std::vector<int> label(f.size());
      std::uniform_int_distribution<int> pick(0, parts - 1);
      for (auto& l : label) l = pick(rng);
      double sum = 0.0;
      for (int p = 0; p < parts; ++p)
        sum += average_norm(f.subset([&](Eigen::Index i) { return label[i] == p; }), pair);
      const double whole = average_norm(f, pair);
      worst = std::max(worst, sum - whole);
      if (sum > whole + 1e-9 * std::max(1.0, whole)) ++bad;
    }
    return Outcome{bad == 0, fmt("%.0f violations; largest sum - whole = %.3g", bad, worst)};
  });

  report(5, "B^{-1} asymptotics", [] {
    const auto pair = NFunctionPair::llogl();
    const double tl = 1e6, ts = 1e-6;
    const double large = tl * inverse_nfunction(pair, Which::psi, 1.0 / tl) / binv_asymptotic(tl, BinvRegime::large_t);
    const double small = ts * inverse_nfunction(pair, Which::psi, 1.0 / ts) / binv_asymptotic(ts, BinvRegime::small_t);
    const bool ok = std::abs(large - 1) < 0.05 && std::abs(small - 1) < 0.15;
    return Outcome{ok, fmt("ratio at t=1e6: %.6f (tol 0.05); ratio at t=1e-6: %.6f (tol 0.15)", large, small)};
  });

  report(6, "partition guarantee", [] {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    int bad = 0, total = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const double lo = -5 + 4 * u(rng), hi = lo + 0.5 + 6 * u(rng);
      const auto nu = random_density(rng, lo, hi, 20 + trial * 3);
      const double a = 0.5 + 1.5 * u(rng);
      for (int n : {2, 4, 8, 16, 32}) {
        const auto breaks = partition_interval(nu, lo, hi, n, a);
        const double q = partition_quality(nu, lo, hi, breaks, a);
        const double target = std::pow(hi - lo, a) * std::pow(n, -1.0 - a) * nu.total_mass();
        ++total;
        worst = std::max(worst, q / target);
        if (!(q <= target) || static_cast<int>(breaks.size()) != n - 1) ++bad;
      }
    }
    return Outcome{bad == 0, fmt("%.0f violations in %.0f cases; max quality/guarantee = %.6f", bad, total, worst)};
  });

  report(7, "strip transverse spectrum", [] {
    std::ostringstream msg;
    // (a) closed forms
    double worst = 0.0;
    const double D = RobinParams::dirichlet;
    for (double a : {0.5, 1.0, 2.0, pi, 7.0}) {
      const auto nn = transverse_spectrum({0, 0, a}, 6);
      const auto dd = transverse_spectrum({D, D, a}, 6);
      const auto dn = transverse_spectrum({D, 0, a}, 6);
      const auto nd = transverse_spectrum({0, D, a}, 6);
      for (int k = 0; k < 6; ++k) {
        auto rel = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };
        worst = std::max(worst, rel(nn.taus[k], std::pow(k * pi / a, 2)));
        worst = std::max(worst, rel(dd.taus[k], std::pow((k + 1) * pi / a, 2)));
        worst = std::max(worst, rel(dn.taus[k], std::pow((k + 0.5) * pi / a, 2)));
        worst = std::max(worst, rel(nd.taus[k], std::pow((k + 0.5) * pi / a, 2)));
      }
    }
    const bool a_ok = worst <= 1e-10;
    // (b) region grid
    int mismatches = 0;
    for (double a : {0.5, 1.0, 2.0})
      for (int i = 0; i < 41; ++i)
        for (int j = 0; j < 41; ++j) {
          const RobinParams p{-5.0 + 0.25 * i, -5.0 + 0.25 * j, a};
          if (count_below(p, 0.0) != negative_count(region_classify(p))) ++mismatches;
        }
    // (c) symmetric threshold alpha a = 2, beta = -alpha
    double lo = 0.5, hi = 4.0;
    const double a = 1.0;
    while (hi - lo > 1e-9) {
      const double m = 0.5 * (lo + hi);
      (count_below({m, -m, a}, 0.0) >= 2 ? hi : lo) = m;
    }
    const bool c_ok = std::abs(0.5 * (lo + hi) * a - 2.0) <= 1e-6;
    msg << "(a) worst rel error " << worst << "; (b) " << mismatches << " mismatches on 3 x 41 x 41; (c) threshold alpha a = "
        << fmt("%.9f", 0.5 * (lo + hi) * a);
    return Outcome{a_ok && mismatches == 0 && c_ok, msg.str()};
  });

  report(8, "oracle consistency", [] {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> order(5, 200), band(0, 12);
    int mismatches = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::Index n = order(rng), bw = std::min<Eigen::Index>(band(rng), n - 1);
      SymmetricBandMatrix m(n, bw);
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index d = 0; d <= bw && j + d < n; ++d) m.add(j + d, j, u(rng));
      const double shift = 0.3 * u(rng);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(), Eigen::EigenvaluesOnly);
      const int dense = static_cast<int>((es.eigenvalues().array() < shift).count());
      if (dense != inertia_count(m, shift)) ++mismatches;
    }
    int well_bad = 0;
    std::ostringstream msg;
    const std::vector<std::pair<double, double>> pairs = {{1.0, 30.0}, {2.0, 12.0}, {pi, 5.0}, {3.0, 50.0}, {0.5, 100.0},
                                                          {5.0, 3.3}, {1.5, 70.0}, {4.0, 0.4}, {2.5, 21.0}, {10.0, 8.0}};
    for (const auto& [L, c] : pairs) {
      int closed = 0;
      while (std::pow((closed + 1) * pi / L, 2) < c) ++closed;
      const auto well = LineMeasure::uniform(0, L, c, 100);
      const int got = oracle_1d(well, 0, L, L / 2000, 1.0, Boundary::dirichlet).count_below;
      if (got != closed) ++well_bad;
      msg << got << "/" << closed << " ";
    }
    return Outcome{mismatches == 0 && well_bad == 0,
                   std::to_string(mismatches) + " band mismatches in 50; well counts (oracle/closed) " + msg.str()};
  });

  report(9, "explicit bound dominates the oracle count", [] {
    const auto cases = build_cases();
    int bad = 0, unconverged = 0;
    std::ostringstream msg;
    for (const auto& c : cases) {
      const bool ok = c.explicit_part >= c.count_h && c.explicit_part >= c.count_h2;
      if (!ok) ++bad;
      if (c.count_h != c.count_h2) ++unconverged;
      std::printf("        %-36s explicit %10.4f  oracle %3d (h) %3d (h/2)  %s\n", c.name.c_str(), c.explicit_part,
                  c.count_h, c.count_h2, ok ? "ok" : "VIOLATED");
    }
    msg << cases.size() << " cases, " << bad << " violations, " << unconverged << " with count(h) != count(h/2)";
    return Outcome{bad == 0 && cases.size() >= 12, msg.str()};
  });

  report(10, "counterexample regressions", [] {
    Eigen::Matrix2Xd p(2, 1);
    p << 0.0, 0.0;
    const auto corner = DiscreteMeasure::from_atoms(p, Eigen::VectorXd::Ones(1));
    const auto s = corner_test_sides(corner, {0, 0}, 0.01, 1.0);
    const int L = 8;
    const auto sums = cantor_offcenter_sums(cantor_measure(L), L);
    bool growing = sums.partial.size() == static_cast<std::size_t>(L);
    for (std::size_t k = 1; growing && k < sums.partial.size(); ++k) growing = sums.partial[k] > sums.partial[k - 1];
    const double ratio = sums.partial.empty() ? 0.0 : sums.partial.back() / sums.tripled_whole;
    const bool ok = !s.holds && s.lhs > s.rhs && growing && ratio >= L - 1e-9;
    return Outcome{ok, fmt("(a) r = 0.01: lhs %.6f > rhs %.6f; (b) level-8 sum / mu(tripled) = %.6f", s.lhs, s.rhs, ratio)};
  });

  report(11, "weak-l1 arithmetic", [] {
    Eigen::VectorXd harm(10000);
    for (int n = 1; n <= 10000; ++n) harm[n - 1] = 1.0 / n;
    const double h = l1w_quasinorm(harm);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    int tri_bad = 0, sum_bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 5 + trial * 7;
      Eigen::VectorXd a(n), b(n);
      for (int i = 0; i < n; ++i) {
        a[i] = std::pow(u(rng), 2) / (1.0 + i * u(rng));
        b[i] = u(rng) < 0.5 ? 0.0 : 3.0 * u(rng) / (1.0 + i);
      }
      if (!(l1w_quasinorm(a + b) <= 2.0 * (l1w_quasinorm(a) + l1w_quasinorm(b)))) ++tri_bad;
      for (double c : {0.092, 0.25}) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          if (a[i] > c) s += std::sqrt(a[i]);
        if (!(s <= 2.0 / std::sqrt(c) * l1w_quasinorm(a))) ++sum_bad;
        s = 0.0;
        for (int i = 0; i < n; ++i)
          if (b[i] > c) s += std::sqrt(b[i]);
        if (!(s <= 2.0 / std::sqrt(c) * l1w_quasinorm(b))) ++sum_bad;
      }
    }
    return Outcome{h == 1.0 && tri_bad == 0 && sum_bad == 0,
                   fmt("l1w(1/n) - 1 = %.3g; %.0f quasi-triangle and %.0f tail-sum violations", h - 1.0, tri_bad, sum_bad)};
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
