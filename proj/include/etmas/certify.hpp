#pragma once
// MASP/MAD certification: searches over the phi-ODE solutions for the largest
// sampling period and delay satisfying the two-mode inequality pair, the
// delay-free single-mode variant, and ratio sweep tables.

#include <optional>
#include <utility>

#include "etmas/etm.hpp"
#include "etmas/phi.hpp"

namespace etmas {

struct CertResult {
  double T = 0.0;            // largest certified sampling period
  double Delta = 0.0;        // largest certified delay, <= T
  std::pair<double, double> phi0_pair{0.0, 0.0};  // (phi_0(0), phi_1(0)) used
  bool feasible = false;
  double margin = 0.0;       // min slack of the checked inequalities on [0, T]
  std::vector<std::string> warnings;
};

// Default initial value policy: the largest admissible phi(0) given
// lambda_bar, capped at 1e6 when lambda_bar is (near) zero.
double default_phi0(double lambda_bar_value);

// Two-mode search (delays allowed).  T is the largest time with
//   gamma0*phi_0(tau) >= (1+varrho1)*lambda_bar^2*gamma1*phi_1(0)  on [0, T]
// and phi_0(T) > 0; Delta is the largest time <= T with
//   gamma1*phi_1(tau) >= (1+varrho0)*gamma0*phi_0(tau)             on [0, Delta]
// and phi_1(Delta) > 0.  Conditions are checked on the uniform grid with the
// boundary refined to 1e-6 s.  phi(0) values outside the theoretical window
// (1, 1/lambda_bar) are accepted with a recorded warning.
CertResult masp_mad_search(const CertificateParams& p, std::pair<double, double> phi0_pair,
                           double grid_step = 1e-5);

// Delay-free search: T sits one refinement tolerance (1e-6 s) below the
// phi-ODE zero crossing, so phi(T) > 0.  Returns 0 when lambda_bar >= 1
// (the admissible phi(0) window is empty).
double masp_delay_free(const CertificateParams& p, double phi0, double grid_step = 1e-5);

struct SweepCell {
  std::optional<double> T;
  std::string note;  // failure reason when T is absent
};

struct SweepTable {
  std::vector<double> ratios;
  std::vector<std::vector<SweepCell>> cells;  // cells[row][net]
  int num_nets() const { return ratios.empty() ? 0 : static_cast<int>(cells[0].size()); }
  std::string to_csv() const;
  std::string to_json() const;
};

// One delay-free certification per (ratio, network) pair with
// rho = ratio * rho_bar and the default phi(0)/varrho policy.  Rows run in
// parallel; `threads` = 0 reads ETMAS_THREADS, falling back to the hardware
// count.  Per-cell failures become empty cells carrying the reason.
SweepTable sweep_table(const std::vector<CertificateParams>& nets,
                       const std::vector<double>& ratios, double grid_step = 1e-5,
                       int threads = 0);

}  // namespace etmas
