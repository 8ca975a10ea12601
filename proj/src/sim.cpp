#include "etmas/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace etmas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double time_tol(double t) { return 1e-12 * (1.0 + std::abs(t)); }

// Per-network execution bookkeeping.
struct NetRuntime {
  NetSlice sl;
  int ax_dim = 0;
  size_t k = 0;              // samplings issued so far
  double next_sample = 0.0;  // absolute time of the next sampling
  bool pending = false;      // a transmission is in flight (b = 1)
  double arrival = kInf;     // absolute arrival time of the pending one
  bool pending_fired = false;
  double lam_bar = 0.0;
};

void validate_timing(const NetSpec& net, int idx) {
  const auto bad = [&](const std::string& what) {
    throw ConfigViolation("network " + std::to_string(idx + 1) + ": " + what);
  };
  if (net.epsilon <= 0.0) bad("epsilon must be positive");
  const size_t count = std::max<size_t>(
      {size_t{1}, net.h_seq.size(), net.delay_seq.size()});
  for (size_t k = 0; k < count; ++k) {
    const double h = net.sample_interval(k);
    const double d = net.sample_delay(k);
    if (h < net.epsilon) bad("sampling interval below epsilon");
    if (net.T > 0.0 && h > net.T + 1e-15) bad("sampling interval exceeds T");
    if (h <= 0.0) bad("sampling interval must be positive");
    if (d < 0.0) bad("negative delay");
    if (d > h + 1e-15) bad("delay exceeds the sampling interval");
    if (d > net.Delta + 1e-15) bad("delay exceeds Delta");
  }
}

}  // namespace

const char* event_tag_name(EventTag tag) {
  switch (tag) {
    case EventTag::Flow: return "flow";
    case EventTag::SampledFired: return "sampled-fired";
    case EventTag::SampledSkipped: return "sampled-skipped";
    case EventTag::Updated: return "updated";
  }
  return "unknown";
}

Trace run(const Scenario& scenario, double horizon, double step, EtmMode mode,
          int record_decimation) {
  if (horizon <= 0.0 || step <= 0.0)
    throw ConfigViolation("run: horizon and step must be positive");
  if (record_decimation < 1) record_decimation = 1;
  const int N = static_cast<int>(scenario.nets.size());
  if (N == 0) throw ConfigViolation("run: scenario has no networks");
  if (mode == EtmMode::Centralized && !scenario.V)
    throw MissingStateLyapunov("run: centralized trigger needs a state Lyapunov function");

  const std::vector<NetSlice> slices = scenario.slices();
  std::vector<NetRuntime> rt(N);
  for (int i = 0; i < N; ++i) {
    const NetSpec& net = scenario.nets[i];
    validate_timing(net, i);
    if (mode == EtmMode::Decentralized && (!net.trigger_W || !net.phi_term))
      throw ConfigViolation("network " + std::to_string(i + 1) +
                            ": decentralized trigger needs trigger_W and phi_term");
    rt[i].sl = slices[i];
    rt[i].ax_dim = net.partition.total_dim();
    rt[i].next_sample = net.sample_interval(0);
    rt[i].lam_bar = lambda_bar(net.cert);
  }

  HybridState st;
  st.x = scenario.x0;
  st.e = scenario.e0.size() > 0 ? scenario.e0 : Vec(Vec::Zero(scenario.e_dim()));
  if (st.e.size() != scenario.e_dim())
    throw DimensionMismatch("run: e0 dimension does not match the network layout");
  st.m = Vec::Zero(scenario.e_dim());
  st.delta = Vec::Zero(N);
  st.tau = Vec::Zero(N);
  st.kappa = IVec::Ones(N);
  st.b = IVec::Zero(N);
  st.t = 0.0;
  st.j = 0;

  const Disturbance w =
      scenario.disturbance ? scenario.disturbance : zero_disturbance(scenario.w_dim);

  Trace trace;
  trace.num_nets = N;
  trace.x_names = scenario.x_names;
  trace.e_names = scenario.e_names;
  trace.slices = slices;
  for (int i = 0; i < N; ++i) trace.ax_dims.push_back(rt[i].ax_dim);

  const int eta_dim =
      scenario.eta_dim > 0 ? scenario.eta_dim : static_cast<int>(scenario.x0.size());

  auto record = [&](EventTag tag, int net, const Vec& gamma) {
    TraceRow row;
    row.t = st.t;
    row.j = st.j;
    row.net = net;
    row.tag = tag;
    row.x = st.x;
    row.e = st.e;
    row.m = st.m;
    row.tau = st.tau;
    row.kappa = st.kappa;
    row.b = st.b;
    row.gamma = gamma;
    row.eta_norm = st.x.head(eta_dim).norm();
    double acc = 0.0;
    for (int i = 0; i < N; ++i) acc += st.e.segment(rt[i].sl.offset, rt[i].ax_dim).squaredNorm();
    row.eax_norm = std::sqrt(acc);
    trace.rows.push_back(std::move(row));
  };
  const Vec no_gamma = Vec::Constant(N, kNaN);

  // Trigger value for network i at a sampling instant (mode b = 0).
  auto trigger_value = [&](int i) -> double {
    const NetSpec& net = scenario.nets[i];
    const Vec e_net = st.e.segment(rt[i].sl.offset, rt[i].sl.dim);
    if (mode == EtmMode::Centralized) {
      const Vec m_net = st.m.segment(rt[i].sl.offset, rt[i].sl.dim);
      LyapunovData lyap;
      lyap.W = net.W;
      lyap.V = scenario.V;
      return gamma_centralized(st.x, e_net, m_net, st.kappa[i], 0, net.cert, lyap);
    }
    if (net.trigger_W && net.phi_term) {
      const double Wt = net.trigger_W(e_net);
      return net.cert.gamma0 * Wt * Wt - net.cert.rho * rt[i].lam_bar * net.phi_term(st.x);
    }
    return kNaN;  // time-triggered run without a wired trigger
  };

  auto apply_arrival = [&](int i) {
    const NetSlice& sl = rt[i].sl;
    const UpdateResult u = apply_update(st.e.segment(sl.offset, sl.dim),
                                        st.m.segment(sl.offset, sl.dim), rt[i].pending_fired);
    st.e.segment(sl.offset, sl.dim) = u.e;
    st.m.segment(sl.offset, sl.dim) = u.m;
    st.b[i] = 0;
    rt[i].pending = false;
    rt[i].arrival = kInf;
    st.j += 1;
    record(EventTag::Updated, i + 1, no_gamma);
  };

  auto apply_sampling = [&](int i) {
    const NetSpec& net = scenario.nets[i];
    const NetSlice& sl = rt[i].sl;
    const Vec e_net = st.e.segment(sl.offset, sl.dim);
    const Vec m_net = st.m.segment(sl.offset, sl.dim);

    Vec gamma = no_gamma;
    const double g = trigger_value(i);
    gamma[i] = g;
    const bool fired = (mode == EtmMode::TimeTriggered) ? true : (g >= 0.0);

    // Protocol update over the node partition; the held tail's update value is
    // zero so it rides the same buffer algebra.
    Vec proto = Vec::Zero(sl.dim);
    const Vec ax = e_net.head(rt[i].ax_dim);
    if (net.protocol == ProtocolKind::RoundRobin)
      proto.head(rt[i].ax_dim) = rr_update(st.kappa[i], ax, net.partition);
    else
      proto.head(rt[i].ax_dim) = tod_update(ax, net.partition);

    const TransmissionResult tr = apply_transmission(e_net, m_net, st.kappa[i], fired, proto);
    st.m.segment(sl.offset, sl.dim) = tr.m;
    st.kappa[i] = tr.kappa;
    st.b[i] = 1;
    st.tau[i] = 0.0;
    st.j += 1;

    rt[i].pending = true;
    rt[i].pending_fired = fired;
    rt[i].arrival = st.t + net.sample_delay(rt[i].k);
    rt[i].k += 1;
    rt[i].next_sample += net.sample_interval(rt[i].k);

    record(fired ? EventTag::SampledFired : EventTag::SampledSkipped, i + 1, gamma);
  };

  long flow_steps = 0;
  auto integrate_to = [&](double t_stop) {
    while (st.t < t_stop - time_tol(t_stop)) {
      const double t_sub = std::min(st.t + step, t_stop);
      st = integrate_flow(st, scenario.flow, w, t_sub, step);
      if (++flow_steps % record_decimation == 0) record(EventTag::Flow, 0, no_gamma);
    }
    st.t = t_stop;
  };

  record(EventTag::Flow, 0, no_gamma);  // initial condition

  while (true) {
    double t_event = kInf;
    for (int i = 0; i < N; ++i)
      t_event = std::min(t_event, rt[i].pending ? rt[i].arrival : rt[i].next_sample);

    if (t_event > horizon + time_tol(horizon)) {
      integrate_to(horizon);
      if (flow_steps % record_decimation != 0) record(EventTag::Flow, 0, no_gamma);
      break;
    }

    integrate_to(t_event);

    // Simultaneous events in ascending network index; within one network the
    // pending arrival precedes the fresh sampling, and a zero-delay arrival
    // follows its sampling immediately.
    for (int i = 0; i < N; ++i) {
      const double tol = time_tol(st.t);
      if (rt[i].pending && rt[i].arrival <= st.t + tol) apply_arrival(i);
      if (!rt[i].pending && rt[i].next_sample <= st.t + tol) {
        apply_sampling(i);
        if (rt[i].arrival <= st.t + tol) apply_arrival(i);
      }
    }
  }

  return trace;
}

std::vector<EventCounts> event_counts(const Trace& trace) {
  std::vector<EventCounts> out(trace.num_nets);
  for (const TraceRow& row : trace.rows) {
    if (row.net < 1 || row.net > trace.num_nets) continue;
    EventCounts& c = out[row.net - 1];
    switch (row.tag) {
      case EventTag::SampledFired:
        ++c.samplings;
        ++c.fired;
        break;
      case EventTag::SampledSkipped:
        ++c.samplings;
        break;
      case EventTag::Updated:
        ++c.updates;
        break;
      case EventTag::Flow:
        break;
    }
  }
  return out;
}

NormSeries error_norms(const Trace& trace) {
  NormSeries out;
  out.t.reserve(trace.rows.size());
  for (const TraceRow& row : trace.rows) {
    out.t.push_back(row.t);
    out.j.push_back(row.j);
    out.eta_norm.push_back(row.eta_norm);
    out.eax_norm.push_back(row.eax_norm);
  }
  return out;
}

}  // namespace etmas
