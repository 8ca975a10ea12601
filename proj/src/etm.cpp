#include "etmas/etm.hpp"

#include <algorithm>
#include <cmath>

namespace etmas {

double rho_bar(double Lbar0, double gamma0) {
  if (gamma0 <= 0.0) throw ConfigViolation("rho_bar: gamma0 must be positive");
  if (Lbar0 <= -gamma0) return 1.0;
  return std::min(1.0, 1.0 / (Lbar0 + gamma0));
}

double lambda_bar(const CertificateParams& p) {
  const double den = 1.0 - p.rho * p.Lbar0;
  if (den <= 0.0) throw DegenerateDenominator("lambda_bar: 1 - rho*Lbar0 <= 0");
  return std::max(p.lambda, p.rho * p.gamma0 / den);
}

double gamma_decentralized(const Vec& z, const Vec& e, const Vec& m, int kappa, int b,
                           const CertificateParams& p, const LyapunovData& lyap) {
  const double W = lyap.W(e, m, kappa, b);
  const double gamma_b = b == 0 ? p.gamma0 : p.gamma1;
  const double hold = b == 0 ? p.rho * lambda_bar(p) * lyap.phi_fn(z) : 0.0;
  return (1.0 - 2.0 * b) * gamma_b * W * W - hold;
}

double gamma_centralized(const Vec& x, const Vec& e, const Vec& m, int kappa, int b,
                         const CertificateParams& p, const LyapunovData& lyap) {
  if (!lyap.V) throw MissingStateLyapunov("gamma_centralized: V is not set");
  if (p.mu <= 0.0) throw ConfigViolation("gamma_centralized: mu must be positive");
  const double W = lyap.W(e, m, kappa, b);
  const double gamma_b = b == 0 ? p.gamma0 : p.gamma1;
  const double lbar = p.lambda * std::max(1.0, p.gamma0 / p.mu);
  const double hold = b == 0 ? p.rho * lbar * lyap.V(x) : 0.0;
  return (1.0 - 2.0 * b) * gamma_b * W * W - hold;
}

TransmissionResult apply_transmission(const Vec& e, const Vec& m, int kappa, bool fired,
                                      const Vec& protocol_out) {
  if (e.size() != m.size()) throw DimensionMismatch("apply_transmission: e/m size mismatch");
  if (fired) {
    if (protocol_out.size() != e.size())
      throw DimensionMismatch("apply_transmission: protocol output size mismatch");
    return {protocol_out - e, kappa + 1};
  }
  return {m, kappa};
}

UpdateResult apply_update(const Vec& e, const Vec& m, bool fired_at_sampling) {
  if (e.size() != m.size()) throw DimensionMismatch("apply_update: e/m size mismatch");
  if (fired_at_sampling) return {e + m, -(e + m)};
  return {e, m};
}

}  // namespace etmas
