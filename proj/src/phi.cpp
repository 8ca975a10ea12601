#include "etmas/phi.hpp"

#include <algorithm>
#include <cmath>

namespace etmas {

namespace {

double phi_rhs(double L, double gamma, double varrho, double phi) {
  return -2.0 * L * phi - gamma * ((1.0 + varrho) * phi * phi + 1.0);
}

double phi_rk4_step(double L, double gamma, double varrho, double phi, double h) {
  const double k1 = phi_rhs(L, gamma, varrho, phi);
  const double k2 = phi_rhs(L, gamma, varrho, phi + 0.5 * h * k1);
  const double k3 = phi_rhs(L, gamma, varrho, phi + 0.5 * h * k2);
  const double k4 = phi_rhs(L, gamma, varrho, phi + h * k3);
  return phi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Advance {
  double phi = 0.0;      // value at the end of the interval (if !crossed)
  double t_cross = 0.0;  // local crossing time within the interval (if crossed)
  bool crossed = false;
};

// Advances phi across one uniform grid interval.  Large initial values make
// the equation locally stiff (the quadratic term dominates), so the interval
// is covered by sub-steps capped at a fixed fraction of the relative scale;
// once phi is order one a single sub-step spans the whole interval.
Advance advance_interval(double L, double gamma, double varrho, double phi, double dt) {
  Advance out;
  double t = 0.0;
  while (t < dt) {
    const double rate = std::abs(phi_rhs(L, gamma, varrho, phi));
    double h = dt - t;
    if (rate > 0.0) h = std::min(h, 0.05 * (1.0 + std::abs(phi)) / rate);
    const double next = phi_rk4_step(L, gamma, varrho, phi, h);
    if (next <= 0.0) {
      out.crossed = true;
      out.t_cross = t + h * (phi / (phi - next));
      return out;
    }
    phi = next;
    t += h;
  }
  out.phi = phi;
  return out;
}

}  // namespace

double PhiSolution::crossing() const {
  if (!has_crossing()) throw TauOutOfRange("PhiSolution::crossing: no zero crossing solved");
  return grid.back();
}

double PhiSolution::at(double tau, bool extend_zero) const {
  if (grid.empty()) throw TauOutOfRange("PhiSolution::at: empty solution");
  if (tau < 0.0) throw TauOutOfRange("PhiSolution::at: negative tau");
  if (tau > grid.back()) {
    if (extend_zero && has_crossing()) return 0.0;
    throw TauOutOfRange("PhiSolution::at: tau past the solved horizon");
  }
  const auto it = std::lower_bound(grid.begin(), grid.end(), tau);
  const size_t hi = static_cast<size_t>(it - grid.begin());
  if (hi == 0) return values.front();
  const size_t lo = hi - 1;
  const double span = grid[hi] - grid[lo];
  if (span <= 0.0) return values[hi];
  const double a = (tau - grid[lo]) / span;
  return (1.0 - a) * values[lo] + a * values[hi];
}

PhiSolution solve_phi(double L, double gamma, double varrho, double phi0, double horizon,
                      double step) {
  if (gamma <= 0.0) throw ConfigViolation("solve_phi: gamma must be positive");
  if (phi0 <= 0.0) throw ConfigViolation("solve_phi: phi(0) must be positive");
  if (step <= 0.0 || horizon <= 0.0)
    throw ConfigViolation("solve_phi: step and horizon must be positive");

  PhiSolution out;
  out.L = L;
  out.gamma = gamma;
  out.varrho = varrho;
  out.phi0 = phi0;
  out.grid.push_back(0.0);
  out.values.push_back(phi0);

  double phi = phi0;
  long k = 0;
  while (static_cast<double>(k) * step < horizon) {
    const double t = static_cast<double>(k) * step;
    const Advance a = advance_interval(L, gamma, varrho, phi, step);
    if (a.crossed) {
      out.grid.push_back(t + a.t_cross);
      out.values.push_back(0.0);
      return out;
    }
    phi = a.phi;
    ++k;
    out.grid.push_back(static_cast<double>(k) * step);
    out.values.push_back(phi);
  }
  return out;
}

}  // namespace etmas
