#pragma once
// Scalar Riccati ODE whose positive-solution lifetime bounds the sampling
// period:  dphi/dtau = -2 L phi - gamma [ (1 + varrho) phi^2 + 1 ].

#include <vector>

#include "etmas/types.hpp"

namespace etmas {

struct PhiSolution {
  std::vector<double> grid;    // sample times, uniform except a final appended crossing
  std::vector<double> values;  // phi at the grid times; strictly decreasing while positive
  double L = 0.0, gamma = 0.0, varrho = 0.0, phi0 = 0.0;

  // True iff the solution reached zero within the solved horizon.
  bool has_crossing() const { return !values.empty() && values.back() <= 0.0; }
  // Time of the appended zero crossing; requires has_crossing().
  double crossing() const;
  // phi(tau) by linear interpolation on the grid.  If extend_zero is set,
  // times past the crossing return 0 instead of raising TauOutOfRange.
  double at(double tau, bool extend_zero = false) const;
};

// Integrates the ODE with fixed-step RK4 from phi(0) = phi0 over a uniform
// grid of the given step.  The grid is truncated at the first nonpositive
// value; the zero crossing, located by linear interpolation across the last
// step, is appended as a final (time, 0) sample.
PhiSolution solve_phi(double L, double gamma, double varrho, double phi0, double horizon,
                      double step);

}  // namespace etmas
