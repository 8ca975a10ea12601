#include <cmath>
#include <random>

#include "doctest.h"
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

TEST_CASE("round-robin grant cycles from kappa = 1") {
  CHECK(rr_granted_node(1, 3) == 0);
  CHECK(rr_granted_node(2, 3) == 1);
  CHECK(rr_granted_node(3, 3) == 2);
  CHECK(rr_granted_node(4, 3) == 0);
  CHECK(rr_granted_node(7, 3) == 0);
  CHECK(rr_granted_node(1, 1) == 0);
}

TEST_CASE("rr_update zeroes exactly the granted block") {
  NodePartition part{{2, 1, 2}};
  Vec e(5);
  e << 1, 2, 3, 4, 5;
  const Vec u1 = rr_update(1, e, part);
  CHECK(u1[0] == 0.0);
  CHECK(u1[1] == 0.0);
  CHECK(u1[2] == 3.0);
  CHECK(u1[3] == 4.0);
  CHECK(u1[4] == 5.0);
  const Vec u2 = rr_update(2, e, part);
  CHECK(u2[2] == 0.0);
  CHECK(u2[0] == 1.0);
  const Vec u3 = rr_update(3, e, part);
  CHECK(u3[3] == 0.0);
  CHECK(u3[4] == 0.0);
}

TEST_CASE("round-robin full cycle resets the error vector exactly") {
  NodePartition part{{1, 3, 2}};
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Vec e = random_vec(rng, part.total_dim());
    const int kappa0 = 1 + (trial % 5);
    for (int k = 0; k < part.node_count(); ++k) e = rr_update(kappa0 + k, e, part);
    CHECK(e.norm() == 0.0);  // bitwise zero: blocks are zeroed, never scaled
  }
}

TEST_CASE("try-once-discard grants the largest block norm, ties to min index") {
  NodePartition part{{1, 1, 1}};
  Vec e(3);
  e << 1.0, -3.0, 2.0;
  CHECK(tod_granted_node(e, part) == 1);
  e << 2.0, -2.0, 2.0;  // exact tie
  CHECK(tod_granted_node(e, part) == 0);
  e << 0.0, 0.0, 0.0;
  CHECK(tod_granted_node(e, part) == 0);
  const Vec u = tod_update((Vec(3) << 1, -3, 2).finished(), part);
  CHECK(u[1] == 0.0);
  CHECK(u[0] == 1.0);
  CHECK(u[2] == 2.0);
}

TEST_CASE("try-once-discard contraction over 1000 random vectors") {
  NodePartition part{{2, 1, 3, 1}};
  const double lambda = contraction_factor(ProtocolKind::TryOnceDiscard, part);
  std::mt19937 rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec e = random_vec(rng, part.total_dim());
    CHECK(tod_update(e, part).norm() <= lambda * e.norm() + 1e-12);
  }
}

TEST_CASE("contraction factor for three nodes") {
  NodePartition part{{1, 1, 1}};
  CHECK(std::abs(contraction_factor(ProtocolKind::RoundRobin, part) - 0.816497) < 1e-6);
  CHECK(contraction_factor(ProtocolKind::TryOnceDiscard, part) ==
        contraction_factor(ProtocolKind::RoundRobin, part));
  CHECK(contraction_factor(ProtocolKind::RoundRobin, NodePartition{{4}}) == 0.0);
}

TEST_CASE("rr_storage satisfies the contraction and norm envelopes") {
  NodePartition part{{1, 2, 1}};
  const int l = part.node_count();
  const double lambda = std::sqrt((l - 1.0) / l);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Vec e = random_vec(rng, part.total_dim());
    const int kappa = 1 + (trial % 7);
    const double w = rr_storage(kappa, e, part);
    CHECK(w >= e.norm() - 1e-12);
    CHECK(w <= std::sqrt(static_cast<double>(l)) * e.norm() + 1e-12);
    // One grant: W(kappa+1, h(kappa, e)) <= lambda W(kappa, e).
    const double w_next = rr_storage(kappa + 1, rr_update(kappa, e, part), part);
    CHECK(w_next <= lambda * w + 1e-12);
  }
}

TEST_CASE("dimension checks") {
  NodePartition part{{2, 2}};
  CHECK_THROWS_AS(rr_update(1, Vec::Zero(3), part), DimensionMismatch);
  CHECK_THROWS_AS(tod_update(Vec::Zero(5), part), DimensionMismatch);
  CHECK_THROWS_AS(rr_storage(1, Vec::Zero(3), part), DimensionMismatch);
  CHECK_THROWS_AS(rr_granted_node(1, 0), DimensionMismatch);
  CHECK_THROWS_AS(contraction_factor(ProtocolKind::RoundRobin, NodePartition{}),
                  DimensionMismatch);
}
