#include "clr/errors.hpp"
#include "clr/strip.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace clr;
using doctest::Approx;
using std::numbers::pi;

namespace {
constexpr double D = RobinParams::dirichlet;
}

TEST_CASE("region classification") {
  CHECK(region_classify({1, -1, 2}) == Region::D);
  CHECK(region_classify({0, 0, 3}) == Region::B);
  CHECK(region_classify({0, -1, 1}) == Region::C);
  CHECK(negative_count(Region::A) == 0);
  CHECK(negative_count(Region::E) == 2);
  CHECK_THROWS_AS(RobinParams({0, 0, -1}).validate(), DomainError);
}

TEST_CASE("closed-form spectra") {
  const auto nn = transverse_spectrum({0, 0, pi}, 4);
  CHECK(nn.taus == std::vector<double>{0, 1, 4, 9});
  const auto dd = transverse_spectrum({D, D, 1}, 2);
  CHECK(dd.taus[0] == Approx(pi * pi).epsilon(1e-14));
  CHECK(dd.taus[1] == Approx(4 * pi * pi).epsilon(1e-14));
  const auto dn = transverse_spectrum({D, 0, 1}, 2);
  CHECK(dn.taus[0] == Approx(pi * pi / 4).epsilon(1e-14));
  CHECK(dn.taus[1] == Approx(9 * pi * pi / 4).epsilon(1e-14));
  CHECK(transverse_spectrum({0, -D, 1}, 1).taus[0] == Approx(pi * pi / 4).epsilon(1e-14));
}

TEST_CASE("Robin spectra") {
  const auto s = transverse_spectrum({1, -1, 2}, 3);
  CHECK(s.taus[0] == Approx(-1.4392288).epsilon(1e-7));
  CHECK(std::sqrt(-s.taus[0]) == Approx(1.1997).epsilon(1e-4));
  CHECK(s.taus[1] == 0.0);
  CHECK(s.taus[2] > 0.0);
  CHECK(s.region == Region::D);
  // equal coefficients alpha = beta = 2, a = 1: one negative mode, e^{-2y}, then (n pi)^2
  const auto e = transverse_spectrum({2, 2, 1}, 3);
  CHECK(e.taus[0] == Approx(-4.0).epsilon(1e-12));
  CHECK(e.taus[1] == Approx(pi * pi).epsilon(1e-12));
  CHECK(e.taus[2] == Approx(4 * pi * pi).epsilon(1e-12));
  for (const auto& p : {RobinParams{1, -1, 2}, RobinParams{3, 0.5, 1}, RobinParams{-2, 4, 0.5}, RobinParams{D, 2, 1},
                        RobinParams{5, 5, 1}, RobinParams{2, D, 1.5}}) {
    const auto sp = transverse_spectrum(p, 5);
    for (std::size_t k = 0; k < sp.taus.size(); ++k) {
      CHECK(sp.residuals[k] < 1e-10);
      CHECK(mode_norm2(sp.modes[k], p.a) == Approx(1.0).epsilon(1e-10));
      if (k) CHECK(sp.taus[k] - sp.taus[k - 1] > 1e-12);
    }
  }
  CHECK_THROWS_AS(transverse_spectrum({0, 0, 1}, 0), DomainError);
}

TEST_CASE("negative counts follow the region on a parameter grid") {
  for (double a : {0.5, 1.0, 2.0})
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; j <= 40; ++j) {
        const RobinParams p{-5.0 + 0.25 * i, -5.0 + 0.25 * j, a};
        CHECK(count_below(p, 0.0) == negative_count(region_classify(p)));
      }
}

TEST_CASE("symmetric case: second negative eigenvalue when alpha a > 2") {
  const double a = 1.0;
  CHECK(count_below({1.0, -1.0, a}, 0.0) == 1);
  CHECK(count_below({2.5, -2.5, a}, 0.0) == 2);
  CHECK(count_below({-1.0, 1.0, a}, 0.0) == 0);
}

TEST_CASE("Dirichlet limits from large coefficients") {
  const double big = 1e6;
  const auto dd = transverse_spectrum({-big, big, 1}, 2);
  CHECK(dd.taus[0] == Approx(pi * pi).epsilon(1e-5));
  CHECK(dd.taus[1] == Approx(4 * pi * pi).epsilon(1e-5));
  const auto dn = transverse_spectrum({-big, 0, 1}, 1);
  CHECK(dn.taus[0] == Approx(pi * pi / 4).epsilon(1e-5));
  const auto nd = transverse_spectrum({0, big, 1}, 1);
  CHECK(nd.taus[0] == Approx(pi * pi / 4).epsilon(1e-5));
}

TEST_CASE("lambda1, lambda2 and u1") {
  const auto d = lambda12({D, D, 1});
  CHECK(d.lambda1 == Approx(pi * pi));
  CHECK(d.lambda2 == Approx(2 * pi * pi));
  const auto n = lambda12({0, 0, 2});
  CHECK(n.lambda1 == 0.0);
  CHECK(n.u1(0.3) == Approx(1.0 / std::sqrt(2.0)));
  const auto dn = lambda12({D, 0, 1});
  CHECK(dn.lambda1 == Approx(pi * pi / 4));
  CHECK(dn.lambda2 == Approx(std::min(9 * pi * pi / 4, pi * pi / 4 + pi * pi)));
  CHECK(d.u1(0.5) * d.u1(0.5) == Approx(2.0));
}

TEST_CASE("Neumann strip terms and bound") {
  const auto mu = DiscreteMeasure::lebesgue({0, 0}, {1.0 / 16, 1.0 / 16}, 16, 16);
  const auto t = strip_terms_neumann(PotentialField::constant(mu, 1.0), mu, 1.0);
  CHECK(t.A.at(0) == Approx(1.0).epsilon(1e-12));
  CHECK(t.A.sum() == Approx(1.0).epsilon(1e-12));
  CHECK(t.D.at(0) == Approx(1.14619322062).epsilon(1e-9));
  CHECK(t.D.sum() == Approx(1.14619322062).epsilon(1e-9));
  const auto b = bound_strip_neumann(t);
  CHECK(b.value == Approx(1 + 7.61 + 1.14619322062).epsilon(1e-9));
  CHECK(b.indicative);
  CHECK(b.explicit_part == Approx(8.61));
  const auto z = strip_terms_neumann(PotentialField::constant(mu, 0.0), mu, 1.0);
  CHECK(bound_strip_neumann(z).value == 1.0);
  const auto t2 = strip_terms_neumann(PotentialField::constant(mu, 2.0), mu, 1.0);
  CHECK(t2.D.at(0) == Approx(2 * t.D.at(0)));
  CHECK_THROWS_AS(strip_terms_neumann(PotentialField::constant(mu, 1.0), mu, 2.0), DomainError);
}

TEST_CASE("Robin strip terms and bound") {
  const double a = 2.0;
  Eigen::Matrix2Xd p(2, 1);
  p << 3.0, a / 2;
  const auto atom = DiscreteMeasure::from_atoms(p, Eigen::VectorXd::Ones(1));
  const auto t = strip_terms_robin(PotentialField::constant(atom, 2.0), atom, {D, D, a});
  CHECK(t.F.at(2) == Approx(3 * 2 * (2 / a)).epsilon(1e-10));
  CHECK(!t.D);
  const auto r = bound_strip_robin(t);
  CHECK(r.theorem == "rbtheqn");
  CHECK(r.parts[0].value == Approx(7.16 * std::sqrt(t.F.at(2))));

  // Neumann walls: F_n = A_n / a
  const auto mu = DiscreteMeasure::lebesgue({-3, 0}, {0.25, 0.25}, 24, 8);
  const auto V = PotentialField::sampled(mu, [](const Eigen::Vector2d& x) { return 1.0 + x.x() * x.x(); });
  const auto rn = strip_terms_robin(V, mu, {0, 0, a});
  const auto nn = strip_terms_neumann(V, mu, a);
  for (const auto& term : nn.A.terms) CHECK(rn.F.at(term.n) == Approx(term.value / a).epsilon(1e-12));
  REQUIRE(rn.D);
  CHECK(bound_strip_robin(rn).theorem == "radest4");
  const auto zero = strip_terms_robin(PotentialField::constant(mu, 0.0), mu, {1, 1, a});
  CHECK(bound_strip_robin(zero).value == 1.0);

  // monotone in V
  const auto bigger = strip_terms_robin(V.scaled(1.5), mu, {1, 0.5, a});
  const auto smaller = strip_terms_robin(V, mu, {1, 0.5, a});
  for (const auto& term : smaller.M.terms) CHECK(bigger.M.at(term.n) >= term.value);
  for (const auto& term : smaller.F.terms) CHECK(bigger.F.at(term.n) >= term.value);
}
