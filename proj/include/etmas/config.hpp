#pragma once
// Declarative run configuration: a flat key/value text format with [net N]
// sections, canonical dumping (bitwise round-trip), and resolution into a
// runnable Scenario with per-network overrides applied.

#include <optional>
#include <string>

#include "etmas/scenario.hpp"
#include "etmas/sim.hpp"

namespace etmas {

struct NetOverride {
  std::optional<double> T, Delta, h, delay, rho, epsilon;
};

struct RunConfig {
  std::string scenario = "observers-coupled";
  double horizon = 100.0;
  double step = 1e-3;
  std::string etm = "etc";  // etc | ttc | centralized
  double rho_ratio = 0.2;
  bool monitor = false;
  int decimation = 1;
  std::vector<double> ratios;  // sweep rows; empty selects the default grid
  std::vector<NetOverride> nets;
};

// Parses the text format.  Lines are `key = value`; `#` starts a comment;
// `[net N]` opens network N's override section (1-based).  Unknown keys and
// malformed values raise ConfigViolation.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical serialization: fixed key order, %.17g numerics.  A dumped config
// reparses to an identical dump.
std::string dump_config(const RunConfig& cfg);

EtmMode etm_mode_of(const RunConfig& cfg);

// Resolves the named scenario and applies the per-network overrides, then
// validates the sampling-interval/delay ordering (epsilon <= h <= T and
// delay <= min(Delta, h)).  Violations raise ConfigViolation.
Scenario make_scenario(const RunConfig& cfg);

}  // namespace etmas
