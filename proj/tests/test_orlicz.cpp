#include "clr/errors.hpp"
#include "clr/orlicz.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace clr;
using doctest::Approx;

namespace {

WeightedSamples random_samples(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> v(0.0, 5.0), w(0.01, 1.0);
  Eigen::VectorXd values(n), weights(n);
  for (int k = 0; k < n; ++k) values[k] = v(rng), weights[k] = w(rng);
  return WeightedSamples(values, weights);
}

}  // namespace

TEST_CASE("N-function values") {
  const auto pair = NFunctionPair::llogl();
  CHECK(eval_nfunction(pair, Which::psi, 0.0) == 0.0);
  CHECK(eval_nfunction(pair, Which::phi, 1.0) == Approx(std::exp(1.0) - 2.0).epsilon(1e-14));
  CHECK(eval_nfunction(pair, Which::psi, 1.0) == Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));
  CHECK_THROWS_AS(eval_nfunction(pair, Which::psi, -1.0), DomainError);
  // small-argument branch agrees with the direct formula where both are accurate
  CHECK(b_function(0.05) == Approx(1.05 * std::log(1.05) - 0.05).epsilon(1e-12));
  CHECK(a_function(0.05) == Approx(std::expm1(0.05) - 0.05).epsilon(1e-12));
}

TEST_CASE("N-function shape: convex, zero at zero, Young inequality") {
  const auto pair = NFunctionPair::llogl();
  for (Which w : {Which::psi, Which::phi}) {
    CHECK(pair(w, 0.0) == 0.0);
    for (int k = 1; k < 400; ++k) {
      const double s = 0.025 * k;
      CHECK(pair(w, s + 0.025) - 2.0 * pair(w, s) + pair(w, s - 0.025) >= -1e-12);
    }
  }
  for (int i = 0; i <= 60; ++i)
    for (int j = 0; j <= 60; ++j) {
      const double s = 0.1 * i, t = 0.1 * j;
      CHECK(s * t <= pair(Which::psi, s) + pair(Which::phi, t) + 1e-12);
    }
}

TEST_CASE("inverse N-functions") {
  const auto pair = NFunctionPair::llogl();
  CHECK(inverse_nfunction(pair, Which::psi, 0.0) == 0.0);
  CHECK(inverse_nfunction(pair, Which::phi, 1.0) == Approx(1.14619322062).epsilon(1e-10));
  // B(e - 1) = e - (e - 1) = 1
  CHECK(inverse_nfunction(pair, Which::psi, 1.0) == Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  CHECK_THROWS_AS(inverse_nfunction(pair, Which::psi, INFINITY), DomainError);
  for (double y : {1e-8, 1e-3, 0.5, 3.0, 1e4}) {
    const double s = inverse_nfunction(pair, Which::psi, y);
    CHECK(std::abs(b_function(s) - y) <= 1e-14 * std::max(1.0, y) + 1e-14);
  }
}

TEST_CASE("asymptotics of t B^{-1}(1/t)") {
  const auto pair = NFunctionPair::llogl();
  CHECK(binv_asymptotic(1e6, BinvRegime::large_t) == Approx(1414.21356).epsilon(1e-8));
  CHECK(binv_asymptotic(1e-6, BinvRegime::small_t) == Approx(1.0 / std::log(1e6)).epsilon(1e-12));
  const double t = 1e6;
  CHECK(std::abs(t * inverse_nfunction(pair, Which::psi, 1.0 / t) / std::sqrt(2.0 * t) - 1.0) < 0.05);
  CHECK_THROWS_AS(binv_asymptotic(0.0, BinvRegime::large_t), DomainError);
}

TEST_CASE("WeightedSamples validation") {
  CHECK_THROWS_AS(WeightedSamples(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(3)), DomainError);
  CHECK_THROWS_AS(WeightedSamples(Eigen::VectorXd::Constant(1, -1.0), Eigen::VectorXd::Ones(1)), DomainError);
  CHECK_THROWS_AS(WeightedSamples(Eigen::VectorXd::Constant(1, NAN), Eigen::VectorXd::Ones(1)), DomainError);
  const WeightedSamples s(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(0.5, 0.25, 0.25));
  CHECK(s.total_mass == Approx(1.0));
  CHECK(s.subset([](Eigen::Index k) { return k != 1; }).total_mass == Approx(0.75));
}

TEST_CASE("Luxemburg norm") {
  const auto pair = NFunctionPair::llogl();
  CHECK(luxemburg_norm(WeightedSamples(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Ones(3)), pair) == 0.0);
  const WeightedSamples one(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1));
  CHECK(luxemburg_norm(one, pair) == Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-9));
  // power pair p = 2: int (f/k)^2 / 2 <= 1  gives  k = ||f||_2 / sqrt 2
  std::mt19937 rng(5);
  const auto f = random_samples(rng, 30);
  const double l2 = std::sqrt(f.values.array().square().matrix().dot(f.weights));
  CHECK(luxemburg_norm(f, NFunctionPair::power(2.0)) == Approx(l2 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(luxemburg_norm(f.scaled(2.0), pair) == Approx(2.0 * luxemburg_norm(f, pair)).epsilon(1e-9));
}

TEST_CASE("level norm closed forms") {
  const auto pair = NFunctionPair::llogl();
  const double ainv = inverse_nfunction(pair, Which::phi, 1.0);
  for (double m : {0.1, 1.0, 7.5}) {
    const WeightedSamples one(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Constant(1, m));
    CHECK(average_norm(one, pair) == Approx(ainv * m).epsilon(1e-9));
  }
  CHECK(level_norm(WeightedSamples(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2)), pair, 3.0) == 0.0);
  CHECK_THROWS_AS(level_norm(WeightedSamples(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)), pair, 0.0),
                  DomainError);
  // power pair p: inf_k (1 + k^p S / p) / k = q^{1/q} ||f||_p with q = p/(p-1)
  std::mt19937 rng(11);
  const auto f = random_samples(rng, 20);
  for (double p : {1.5, 2.0, 3.0}) {
    const double q = p / (p - 1.0);
    const double S = f.values.array().pow(p).matrix().dot(f.weights);
    CHECK(orlicz_norm(f, NFunctionPair::power(p)) == Approx(std::pow(q, 1.0 / q) * std::pow(S, 1.0 / p)).epsilon(1e-8));
  }
}

TEST_CASE("zero-mass region has norm zero") {
  const auto pair = NFunctionPair::llogl();
  const WeightedSamples z(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Zero(2));
  CHECK(average_norm(z, pair) == 0.0);
}

TEST_CASE("tau-scaling sandwich and partition sandwich") {
  const auto pair = NFunctionPair::llogl();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> tau(0.1, 10.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_samples(rng, 12);
    const double t1 = tau(rng), t2 = tau(rng);
    const double n1 = average_norm(f, pair, t1), n2 = average_norm(f, pair, t2);
    CHECK(std::min(1.0, t2 / t1) * n1 <= n2 * (1 + 1e-9));
    CHECK(n2 <= std::max(1.0, t2 / t1) * n1 * (1 + 1e-9));

    const auto a = f.subset([](Eigen::Index k) { return k % 3 == 0; });
    const auto b = f.subset([](Eigen::Index k) { return k % 3 != 0; });
    const double whole = average_norm(f, pair);
    const double parts = average_norm(a, pair) + average_norm(b, pair);
    const double M = std::max(f.total_mass / a.total_mass, f.total_mass / b.total_mass);
    CHECK(parts <= whole * (1 + 1e-9));
    CHECK(whole <= M * parts * (1 + 1e-9));
  }
}

TEST_CASE("Hoelder inequality against the dual Luxemburg norm") {
  const auto pair = NFunctionPair::llogl();
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_samples(rng, 10);
    auto g = random_samples(rng, 10);
    g.weights = f.weights;
    g.total_mass = f.total_mass;
    const double lhs = f.values.cwiseProduct(g.values).dot(f.weights);
    CHECK(lhs <= orlicz_norm(f, pair) * luxemburg_norm(g, pair.dual()) * (1 + 1e-9));
  }
}

TEST_CASE("level norm dominates every feasible dual element") {
  const auto pair = NFunctionPair::llogl();
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_samples(rng, 8);
    const double a = 1.3;
    const double norm = level_norm(f, pair, a);
    for (int g_trial = 0; g_trial < 20; ++g_trial) {
      Eigen::VectorXd g(8);
      for (int k = 0; k < 8; ++k) g[k] = u(rng);
      // scale g onto the constraint set sum A(g) w <= a
      double lo = 0.0, hi = 1.0;
      auto lev = [&](double t) {
        double s = 0.0;
        for (int k = 0; k < 8; ++k) s += a_function(t * g[k]) * f.weights[k];
        return s;
      };
      while (lev(hi) < a) hi *= 2.0;
      for (int it = 0; it < 100; ++it) (lev(0.5 * (lo + hi)) <= a ? lo : hi) = 0.5 * (lo + hi);
      CHECK(f.values.cwiseProduct(lo * g).dot(f.weights) <= norm * (1 + 1e-9));
    }
  }
}

TEST_CASE("mixed norm") {
  const auto pair = NFunctionPair::llogl();
  CHECK(mixed_norm(Eigen::MatrixXd::Zero(4, 4), 0.25, 0.25, pair) == 0.0);
  CHECK(mixed_norm(Eigen::MatrixXd::Ones(8, 8), 0.125, 0.125, pair) == Approx(1.14619322062).epsilon(1e-9));
  CHECK_THROWS_AS(mixed_norm(Eigen::MatrixXd(0, 0), 0.1, 0.1, pair), DomainError);
  // smooth f(x, y) = 1 + x y on the unit square: h -> h/2 changes little
  auto sample = [](int n) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = 1.0 + (i + 0.5) / n * (j + 0.5) / n;
    return m;
  };
  const double coarse = mixed_norm(sample(200), 1.0 / 200, 1.0 / 200, pair);
  const double fine = mixed_norm(sample(400), 1.0 / 400, 1.0 / 400, pair);
  CHECK(std::abs(coarse - fine) < 1e-5);
  // plain slice norm uses level 1 instead of the slice length
  CHECK(mixed_norm(Eigen::MatrixXd::Ones(4, 4), 0.25, 0.5, pair, SliceNorm::plain) ==
        Approx(level_norm(WeightedSamples(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Constant(1, 2.0)), pair, 1.0))
            .epsilon(1e-9));
}

TEST_CASE("weak l1 quasinorm") {
  Eigen::VectorXd harmonic(1000);
  for (int k = 0; k < 1000; ++k) harmonic[k] = 1.0 / (k + 1);
  CHECK(l1w_quasinorm(harmonic) == Approx(1.0).epsilon(1e-14));
  CHECK(l1w_quasinorm(Eigen::VectorXd::Zero(5)) == 0.0);
  CHECK(l1w_quasinorm(Eigen::Vector3d(3.0, -1.0, 2.0)) == 4.0);
}
