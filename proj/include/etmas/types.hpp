#pragma once
// Core value types shared by every module: hybrid time, the stacked hybrid
// state, and the error hierarchy.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace etmas {

using Vec = Eigen::VectorXd;
using IVec = Eigen::VectorXi;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonFiniteState : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct DegenerateDenominator : Error {
  using Error::Error;
};
struct InfeasibleInitialization : Error {
  using Error::Error;
};
struct ConfigViolation : Error {
  using Error::Error;
};
struct MissingStateLyapunov : Error {
  using Error::Error;
};
struct MissingJacobian : Error {
  using Error::Error;
};
struct TauOutOfRange : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Hybrid time

struct HybridTime {
  double t = 0.0;  // continuous time, seconds
  long j = 0;      // jump counter
};

// ---------------------------------------------------------------------------
// Hybrid state
//
// The stacked state (x, e, m, delta, tau, kappa, b).  x is the plant-side
// stack; e and m are concatenations of per-network blocks; delta, tau, kappa
// and b hold one entry per network.  The per-network slicing of e/m is owned
// by the scenario (see model.hpp), not by this struct.

struct HybridState {
  Vec x;
  Vec e;
  Vec m;
  Vec delta;
  Vec tau;
  IVec kappa;
  IVec b;
  double t = 0.0;
  long j = 0;

  int num_nets() const { return static_cast<int>(tau.size()); }
  bool all_finite() const {
    return x.allFinite() && e.allFinite() && m.allFinite() &&
           delta.allFinite() && tau.allFinite();
  }
};

// Slice descriptor for one network's block inside the stacked e/m vectors.
struct NetSlice {
  int offset = 0;
  int dim = 0;
};

inline Vec slice(const Vec& v, const NetSlice& s) { return v.segment(s.offset, s.dim); }

}  // namespace etmas
