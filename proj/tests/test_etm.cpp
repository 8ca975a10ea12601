#include <cmath>
#include <random>

#include "doctest.h"
#include "etmas/etm.hpp"
#include "etmas/protocol.hpp"

using namespace etmas;

namespace {

Vec random_vec(std::mt19937& rng, int n) {
  std::normal_distribution<double> dist;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("largest admissible rho for the observer gains") {
  // 1/gamma with no trigger-storage growth; published to four significant
  // figures as 0.5799 and 0.6647.
  CHECK(std::abs(rho_bar(0.0, 1.7243) - 0.5799) / 0.5799 < 5e-4);
  CHECK(std::abs(rho_bar(0.0, 1.5045) - 0.6647) / 0.6647 < 5e-4);
}

TEST_CASE("rho_bar piecewise behavior") {
  CHECK(rho_bar(-2.0, 1.0) == 1.0);        // Lbar0 <= -gamma0: unconstrained
  CHECK(rho_bar(-0.5, 1.0) == 1.0);        // 1/(Lbar0+gamma0) = 2, capped at 1
  CHECK(rho_bar(1.0, 1.0) == 0.5);
  CHECK(rho_bar(9.0, 1.0) == 0.1);
  CHECK_THROWS_AS(rho_bar(0.0, 0.0), ConfigViolation);
}

TEST_CASE("lambda_bar formula and degeneracy") {
  CertificateParams p;
  p.lambda = 0.3;
  p.gamma0 = 2.0;
  p.Lbar0 = 1.0;
  p.rho = 0.25;
  // rho*gamma0/(1 - rho*Lbar0) = 0.5/0.75
  CHECK(lambda_bar(p) == doctest::Approx(0.5 / 0.75).epsilon(1e-15));
  p.rho = 0.05;  // trigger term 0.1/0.95 < lambda
  CHECK(lambda_bar(p) == 0.3);
  p.rho = 1.0;  // denominator 0
  CHECK_THROWS_AS(lambda_bar(p), DegenerateDenominator);
  p.rho = 2.0;  // denominator negative
  CHECK_THROWS_AS(lambda_bar(p), DegenerateDenominator);
}

TEST_CASE("decentralized trigger value per mode") {
  CertificateParams p;
  p.lambda = 0.0;
  p.gamma0 = 2.0;
  p.gamma1 = 3.0;
  p.Lbar0 = 0.0;
  p.rho = 0.25;
  LyapunovData lyap;
  lyap.W = [](const Vec& e, const Vec& m, int, int b) {
    return b == 0 ? e.norm() : (e + m).norm();
  };
  lyap.phi_fn = [](const Vec& z) { return z.squaredNorm(); };

  const Vec z = Vec::Constant(2, 1.0);
  const Vec e = Vec::Constant(2, 0.5);
  const Vec m = Vec::Constant(2, -0.1);

  // b = 0: gamma0*W^2 - rho*lambda_bar*phi(z)
  const double lbar = lambda_bar(p);
  const double expect0 = 2.0 * e.squaredNorm() - 0.25 * lbar * z.squaredNorm();
  CHECK(gamma_decentralized(z, e, m, 1, 0, p, lyap) == doctest::Approx(expect0).epsilon(1e-15));

  // b = 1: -(gamma1*W^2), always nonpositive, no hold term
  const double expect1 = -3.0 * (e + m).squaredNorm();
  CHECK(gamma_decentralized(z, e, m, 1, 1, p, lyap) == doctest::Approx(expect1).epsilon(1e-15));
  CHECK(gamma_decentralized(z, e, m, 1, 1, p, lyap) <= 0.0);
}

TEST_CASE("centralized trigger uses the state Lyapunov function") {
  CertificateParams p;
  p.lambda = 0.5;
  p.gamma0 = 4.0;
  p.mu = 2.0;
  p.rho = 0.1;
  LyapunovData lyap;
  lyap.W = [](const Vec& e, const Vec&, int, int) { return e.norm(); };

  const Vec x = Vec::Constant(3, 1.0);
  const Vec e = Vec::Constant(2, 1.0);
  const Vec m = Vec::Zero(2);

  CHECK_THROWS_AS(gamma_centralized(x, e, m, 1, 0, p, lyap), MissingStateLyapunov);

  lyap.V = [](const Vec& v) { return v.squaredNorm(); };
  // lambda_bar_c = lambda * max{1, gamma0/mu} = 0.5 * 2 = 1
  const double expect = 4.0 * e.squaredNorm() - 0.1 * 1.0 * x.squaredNorm();
  CHECK(gamma_centralized(x, e, m, 1, 0, p, lyap) == doctest::Approx(expect).epsilon(1e-15));

  p.mu = 8.0;  // gamma0/mu < 1: factor clamps at 1, lambda_bar_c = lambda
  const double expect2 = 4.0 * e.squaredNorm() - 0.1 * 0.5 * x.squaredNorm();
  CHECK(gamma_centralized(x, e, m, 1, 0, p, lyap) == doctest::Approx(expect2).epsilon(1e-15));

  p.mu = 0.0;
  CHECK_THROWS_AS(gamma_centralized(x, e, m, 1, 0, p, lyap), ConfigViolation);
}

TEST_CASE("sampling jump buffer algebra") {
  Vec e(3), m(3), proto(3);
  e << 1, 2, 3;
  m << -1, 0, 1;
  proto << 0, 2, 3;

  const TransmissionResult fired = apply_transmission(e, m, 5, true, proto);
  CHECK(fired.kappa == 6);
  CHECK(fired.m[0] == -1.0);
  CHECK(fired.m[1] == 0.0);
  CHECK(fired.m[2] == 0.0);

  const TransmissionResult skipped = apply_transmission(e, m, 5, false, proto);
  CHECK(skipped.kappa == 5);
  CHECK(skipped.m == m);

  CHECK_THROWS_AS(apply_transmission(e, Vec::Zero(2), 1, false, proto), DimensionMismatch);
  CHECK_THROWS_AS(apply_transmission(e, m, 1, true, Vec::Zero(2)), DimensionMismatch);
}

TEST_CASE("arrival jump error algebra") {
  Vec e(2), m(2);
  e << 1.0, -2.0;
  m << 0.5, 0.5;
  const UpdateResult up = apply_update(e, m, true);
  CHECK(up.e[0] == 1.5);
  CHECK(up.e[1] == -1.5);
  CHECK(up.m[0] == -1.5);
  CHECK(up.m[1] == 1.5);
  const UpdateResult held = apply_update(e, m, false);
  CHECK(held.e == e);
  CHECK(held.m == m);
  CHECK_THROWS_AS(apply_update(e, Vec::Zero(3), true), DimensionMismatch);
}

TEST_CASE("zero-delay jump composition equals the direct protocol update") {
  // Transmission immediately followed by arrival: e+ = e + (h - e) = h(kappa, e)
  // bitwise, since untouched blocks cancel exactly and granted blocks are 0.
  NodePartition part{{2, 1, 2}};
  std::mt19937 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec e = random_vec(rng, part.total_dim());
    const Vec m = random_vec(rng, part.total_dim());
    const int kappa = 1 + (trial % 9);
    const Vec proto = rr_update(kappa, e, part);
    const TransmissionResult tr = apply_transmission(e, m, kappa, true, proto);
    const UpdateResult up = apply_update(e, tr.m, true);
    CHECK(up.e == proto);  // exact equality, component-wise
  }
}
