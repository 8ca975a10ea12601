#pragma once
// Fixed-step RK4 flow integration with exact landing on the stop time.

#include <functional>

#include "etmas/types.hpp"

namespace etmas {

// Right-hand sides of the flow: f drives x, g drives e.  Both receive the
// current continuous time (for feedforward terms), the per-network clocks
// delta, the state stacks and the disturbance sample.  delta and tau advance
// at unit rate; m, kappa, b are constant along flows.
struct FlowField {
  std::function<Vec(double t, const Vec& delta, const Vec& x, const Vec& e, const Vec& w)> f;
  std::function<Vec(double t, const Vec& delta, const Vec& x, const Vec& e, const Vec& w)> g;
};

using Disturbance = std::function<Vec(double t)>;

Disturbance zero_disturbance(int dim);

// Advances `state` to exactly t_stop with classical RK4; the final partial
// step is shortened to land on t_stop.  m, kappa, b are untouched; tau and
// delta each advance by (t_stop - state.t).  Throws NonFiniteState if any
// component leaves the finite range.
HybridState integrate_flow(const HybridState& state, const FlowField& field,
                           const Disturbance& w, double t_stop, double step);

// Per-network timer bounds used by the flow-set membership test.
struct TimingBounds {
  double T = 0.0;      // largest admissible tau while b = 0
  double Delta = 0.0;  // largest admissible tau while b = 1
};

// True iff every network's (b, tau) pair lies in its flow window:
// b = 0 requires tau in [0, T]; b = 1 requires tau in [0, Delta].
bool clamp_to_flow_set(const HybridState& state, const std::vector<TimingBounds>& nets);

// Generic dense RK4 helper used by the phi solver and tests: advances y by a
// single step of size h for dy/dt = rhs(t, y).
Vec rk4_step(const std::function<Vec(double, const Vec&)>& rhs, double t, const Vec& y,
             double h);

}  // namespace etmas
