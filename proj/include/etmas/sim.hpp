#pragma once
// Event-driven hybrid execution: per-network sampling/arrival schedules,
// trigger evaluation, jump application, and trace recording.

#include "etmas/scenario.hpp"

namespace etmas {

enum class EtmMode { Decentralized, Centralized, TimeTriggered };

enum class EventTag { Flow, SampledFired, SampledSkipped, Updated };

const char* event_tag_name(EventTag tag);

struct TraceRow {
  double t = 0.0;
  long j = 0;
  int net = 0;  // 1-based network index for jump rows, 0 for flow rows
  EventTag tag = EventTag::Flow;
  Vec x, e, m, tau;
  IVec kappa, b;
  Vec gamma;        // per-net trigger values (NaN when not evaluated)
  double eta_norm = 0.0;
  double eax_norm = 0.0;
  double U = std::numeric_limits<double>::quiet_NaN();  // filled by the monitor
};

struct Trace {
  std::vector<TraceRow> rows;
  std::vector<std::string> x_names, e_names;
  std::vector<NetSlice> slices;
  std::vector<int> ax_dims;  // protocol-node dims per net (held block excluded)
  int num_nets = 0;
};

// Runs the hybrid execution to the horizon.  Events land on their exact
// times; simultaneous events are processed in ascending network index, with a
// network's pending arrival preceding its own next sampling.  Flow state is
// recorded every `record_decimation`-th integrator step.
Trace run(const Scenario& scenario, double horizon, double step,
          EtmMode mode = EtmMode::Decentralized, int record_decimation = 1);

struct EventCounts {
  long samplings = 0;
  long fired = 0;
  long updates = 0;
};
std::vector<EventCounts> event_counts(const Trace& trace);

struct NormSeries {
  std::vector<double> t;
  std::vector<long> j;
  std::vector<double> eta_norm, eax_norm;
};
NormSeries error_norms(const Trace& trace);

}  // namespace etmas
