#include "etmas/integrate.hpp"

#include <cmath>

namespace etmas {

Disturbance zero_disturbance(int dim) {
  return [dim](double) { return Vec::Zero(dim); };
}

Vec rk4_step(const std::function<Vec(double, const Vec&)>& rhs, double t, const Vec& y,
             double h) {
  const Vec k1 = rhs(t, y);
  const Vec k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
  const Vec k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
  const Vec k4 = rhs(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

bool clamp_to_flow_set(const HybridState& state, const std::vector<TimingBounds>& nets) {
  if (static_cast<int>(nets.size()) != state.num_nets())
    throw DimensionMismatch("clamp_to_flow_set: bounds/network count mismatch");
  for (int i = 0; i < state.num_nets(); ++i) {
    const double tau = state.tau[i];
    const double hi = state.b[i] == 0 ? nets[i].T : nets[i].Delta;
    if (tau < 0.0 || tau > hi) return false;
  }
  return true;
}

HybridState integrate_flow(const HybridState& state, const FlowField& field,
                           const Disturbance& w, double t_stop, double step) {
  if (t_stop < state.t) throw ConfigViolation("integrate_flow: t_stop precedes current time");
  if (step <= 0.0) throw ConfigViolation("integrate_flow: step must be positive");

  HybridState out = state;
  if (t_stop == state.t) return out;

  const double t0 = state.t;
  const int nx = static_cast<int>(state.x.size());
  const int ne = static_cast<int>(state.e.size());

  // Stack (x, e) for the RK4 stages; delta enters stage evaluations through
  // its exact linear advance delta0 + (t - t0).
  Vec y(nx + ne);
  y.head(nx) = state.x;
  y.tail(ne) = state.e;
  const Vec delta0 = state.delta;

  auto rhs = [&](double t, const Vec& z) {
    const Vec delta = delta0.array() + (t - t0);
    const Vec x = z.head(nx);
    const Vec e = z.tail(ne);
    const Vec dw = w(t);
    Vec dz(nx + ne);
    dz.head(nx) = field.f(t, delta, x, e, dw);
    dz.tail(ne) = field.g(t, delta, x, e, dw);
    return dz;
  };

  double t = t0;
  while (t < t_stop) {
    const double h = std::min(step, t_stop - t);
    y = rk4_step(rhs, t, y, h);
    t += h;
    if (!y.allFinite()) throw NonFiniteState("integrate_flow: state became non-finite at t=" + std::to_string(t));
  }

  out.x = y.head(nx);
  out.e = y.tail(ne);
  out.t = t_stop;
  const double elapsed = t_stop - t0;
  out.delta = state.delta.array() + elapsed;
  out.tau = state.tau.array() + elapsed;
  return out;
}

}  // namespace etmas
