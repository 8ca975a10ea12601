#pragma once
// Composite-Lyapunov diagnostic: evaluates
//   U = V(x) + sum_i max{ gamma_{i,b} phi_{i,b}(tau_i) W_i^2, (1-b_i) rho_i phi_i(z_i) }
// along a trace and reports flow increases and jump increases beyond a slack.

#include "etmas/certify.hpp"
#include "etmas/sim.hpp"

namespace etmas {

struct NetMonitor {
  NetSlice sl;
  std::function<double(const Vec& e, const Vec& m, int kappa, int b)> W;
  std::function<double(const Vec& x)> phi_z;  // trigger-side term phi_i(z_i)
  PhiSolution phi0, phi1;                     // per-mode clock weights
  double gamma0 = 1.0, gamma1 = 1.0, rho = 0.0;
};

struct MonitorConfig {
  std::function<double(const Vec& x)> V;
  std::vector<NetMonitor> nets;
  // Read phi as 0 past its crossing instead of raising TauOutOfRange; used by
  // falsification probes that run past the certified window on purpose.
  bool extend_zero = false;
  bool enabled = true;
};

// Builds a config from a scenario: phi solutions from each network's
// certificate with the default initial-value policy, W and phi_z as wired by
// the scenario.
MonitorConfig monitor_config_for(const Scenario& scenario, double grid_step = 1e-5,
                                 bool extend_zero = false);

double evaluate_U(const HybridState& state, const MonitorConfig& cfg);

// Fills TraceRow::U in place.
void annotate(Trace& trace, const MonitorConfig& cfg);

struct Violation {
  double t0 = 0.0, t1 = 0.0;
  long j0 = 0, j1 = 0;
  double dU = 0.0;
};

struct MonitorReport {
  std::vector<Violation> flow_violations;
  std::vector<Violation> jump_violations;
  bool passed() const { return flow_violations.empty() && jump_violations.empty(); }
};

// Flow check: U non-increase between consecutive flow samples (same j).
// Jump check: U non-increase across each jump group, where all jump rows
// sharing one t form a single group (a sampling and its zero-delay arrival
// count as one composite jump).  Increases beyond `slack` are violations.
MonitorReport check_trace(const Trace& trace, const MonitorConfig& cfg, double slack = 1e-9);

std::string report_json(const MonitorReport& report);

}  // namespace etmas
