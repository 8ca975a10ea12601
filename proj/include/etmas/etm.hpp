#pragma once
// Event-triggered mechanisms: the decentralized and centralized trigger
// functions, their derived constants, and the sampling/arrival jump algebra.

#include <functional>
#include <optional>

#include "etmas/types.hpp"

namespace etmas {

// Certificate scalars per network.  Index 0/1 selects the mode b: 0 while
// waiting for the next sampling, 1 while a transmission is in flight.
struct CertificateParams {
  double lambda = 0.0;  // protocol contraction, in [0, 1)
  double L0 = 0.0, L1 = 0.0;          // storage growth rates (flow)
  double Lbar0 = 0.0, Lbar1 = 0.0;    // trigger-storage growth rates
  double gamma0 = 1.0, gamma1 = 1.0;  // gain constants, > 0
  double theta0 = 1.0, theta1 = 1.0;  // margin constants
  double mu = 1.0;                    // state-Lyapunov decay rate
  double varrho0 = 1e-9, varrho1 = 1e-9;  // slack constants, > 0
  double rho = 0.0;                   // trigger aggressiveness, in [0, rho_bar)
};

// Callable Lyapunov-side data accompanying a certificate.
struct LyapunovData {
  // Storage over one network's (e, m, kappa, b).
  std::function<double(const Vec& e, const Vec& m, int kappa, int b)> W;
  // Trigger storage phi_{i,b} over the transmitted signal z.
  std::function<double(const Vec& z)> phi_fn;
  // State Lyapunov function (required by the centralized trigger).
  std::function<double(const Vec& x)> V;
};

// Largest admissible rho: piecewise in Lbar0 and gamma0.
double rho_bar(double Lbar0, double gamma0);

// lambda_bar = max{lambda, rho*gamma0 / (1 - rho*Lbar0)}.
// Throws DegenerateDenominator when 1 - rho*Lbar0 <= 0.
double lambda_bar(const CertificateParams& p);

// Decentralized trigger value: (1-2b)*gamma_b*W^2 - (1-b)*rho*lambda_bar*phi(z).
// The event fires iff the value is >= 0; with b = 1 it is always <= 0.
double gamma_decentralized(const Vec& z, const Vec& e, const Vec& m, int kappa, int b,
                           const CertificateParams& p, const LyapunovData& lyap);

// Centralized trigger value: (1-2b)*gamma_b*W^2 - (1-b)*rho*lambda_bar_c*V(x)
// with lambda_bar_c = lambda * max{1, gamma0/mu}.  Requires lyap.V.
double gamma_centralized(const Vec& x, const Vec& e, const Vec& m, int kappa, int b,
                         const CertificateParams& p, const LyapunovData& lyap);

// Sampling jump (G1) buffer/counter algebra.  If the trigger fired,
// m' = protocol_out - e and kappa' = kappa + 1; otherwise both pass through.
// The caller flips the mode flag 0 -> 1 and zeroes tau in either case.
struct TransmissionResult {
  Vec m;
  int kappa;
};
TransmissionResult apply_transmission(const Vec& e, const Vec& m, int kappa, bool fired,
                                      const Vec& protocol_out);

// Arrival jump (G2) error/buffer algebra.  If the preceding sampling fired,
// e' = e + m and m' = -e - m; otherwise e passes through and m is kept.
// The caller flips the mode flag 1 -> 0.
struct UpdateResult {
  Vec e;
  Vec m;
};
UpdateResult apply_update(const Vec& e, const Vec& m, bool fired_at_sampling);

}  // namespace etmas
