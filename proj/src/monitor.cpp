#include "etmas/monitor.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace etmas {

namespace {

constexpr double kPhiHorizon = 1e6;

HybridState row_state(const TraceRow& row) {
  HybridState st;
  st.x = row.x;
  st.e = row.e;
  st.m = row.m;
  st.tau = row.tau;
  st.kappa = row.kappa;
  st.b = row.b;
  st.t = row.t;
  st.j = row.j;
  return st;
}

}  // namespace

MonitorConfig monitor_config_for(const Scenario& scenario, double grid_step,
                                 bool extend_zero) {
  MonitorConfig cfg;
  cfg.V = scenario.V;
  cfg.extend_zero = extend_zero;
  const auto slices = scenario.slices();
  for (size_t i = 0; i < scenario.nets.size(); ++i) {
    const NetSpec& net = scenario.nets[i];
    const CertificateParams& p = net.cert;
    NetMonitor nm;
    nm.sl = slices[i];
    nm.W = net.W;
    nm.phi_z = net.phi_term;
    nm.gamma0 = p.gamma0;
    nm.gamma1 = p.gamma1;
    nm.rho = p.rho;
    const double phi_init = default_phi0(lambda_bar(p));
    nm.phi0 = solve_phi(p.L0, p.gamma0, p.varrho0, phi_init, kPhiHorizon, grid_step);
    nm.phi1 = solve_phi(p.L1, p.gamma1, p.varrho1, phi_init, kPhiHorizon, grid_step);
    cfg.nets.push_back(std::move(nm));
  }
  return cfg;
}

double evaluate_U(const HybridState& state, const MonitorConfig& cfg) {
  double U = cfg.V ? cfg.V(state.x) : 0.0;
  for (size_t i = 0; i < cfg.nets.size(); ++i) {
    const NetMonitor& nm = cfg.nets[i];
    const Vec e = state.e.segment(nm.sl.offset, nm.sl.dim);
    const Vec m = state.m.segment(nm.sl.offset, nm.sl.dim);
    const int b = state.b[static_cast<int>(i)];
    const double tau = state.tau[static_cast<int>(i)];
    const double W = nm.W(e, m, state.kappa[static_cast<int>(i)], b);
    const double phi =
        (b == 0 ? nm.phi0 : nm.phi1).at(tau, cfg.extend_zero);
    const double gamma = b == 0 ? nm.gamma0 : nm.gamma1;
    double w_term = gamma * phi * W * W;
    if (b == 0 && nm.phi_z) w_term = std::max(w_term, nm.rho * nm.phi_z(state.x));
    U += w_term;
  }
  return U;
}

void annotate(Trace& trace, const MonitorConfig& cfg) {
  for (TraceRow& row : trace.rows) row.U = evaluate_U(row_state(row), cfg);
}

MonitorReport check_trace(const Trace& trace, const MonitorConfig& cfg, double slack) {
  MonitorReport report;
  if (trace.rows.empty() || !cfg.enabled) return report;

  std::vector<double> U(trace.rows.size());
  for (size_t i = 0; i < trace.rows.size(); ++i)
    U[i] = std::isfinite(trace.rows[i].U) ? trace.rows[i].U
                                          : evaluate_U(row_state(trace.rows[i]), cfg);

  size_t i = 0;
  while (i + 1 < trace.rows.size()) {
    const TraceRow& a = trace.rows[i];
    const TraceRow& b = trace.rows[i + 1];
    if (b.tag == EventTag::Flow) {
      // Flow step a -> b (same j).
      if (U[i + 1] > U[i] + slack)
        report.flow_violations.push_back({a.t, b.t, a.j, b.j, U[i + 1] - U[i]});
      ++i;
      continue;
    }
    // Jump group: all consecutive jump rows sharing b's time form one
    // composite jump measured against the pre-group value.
    size_t last = i + 1;
    while (last + 1 < trace.rows.size() && trace.rows[last + 1].tag != EventTag::Flow &&
           trace.rows[last + 1].t == b.t)
      ++last;
    if (U[last] > U[i] + slack)
      report.jump_violations.push_back(
          {a.t, trace.rows[last].t, a.j, trace.rows[last].j, U[last] - U[i]});
    i = last;
  }
  return report;
}

std::string report_json(const MonitorReport& report) {
  auto dump = [](const std::vector<Violation>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const Violation& x : v)
      a.push_back({{"t0", x.t0}, {"t1", x.t1}, {"j0", x.j0}, {"j1", x.j1}, {"dU", x.dU}});
    return a;
  };
  nlohmann::json o;
  o["passed"] = report.passed();
  o["flow_violations"] = dump(report.flow_violations);
  o["jump_violations"] = dump(report.jump_violations);
  return o.dump(2) + "\n";
}

}  // namespace etmas
