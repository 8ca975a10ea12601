#include "etmas.h"

#include <cstring>
#include <string>

#include "json.hpp"

#include "etmas/certify.hpp"
#include "etmas/config.hpp"
#include "etmas/monitor.hpp"
#include "etmas/sim.hpp"
#include "etmas/trace_io.hpp"

using namespace etmas;

struct etmas_scenario {
  RunConfig rc;
  Scenario sc;
};

struct etmas_trace {
  Trace tr;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
int guard(F&& fn) {
  try {
    fn();
    return ETMAS_OK;
  } catch (const ConfigViolation& e) {
    g_last_error = e.what();
    return ETMAS_ERR_CONFIG;
  } catch (const DimensionMismatch& e) {
    g_last_error = e.what();
    return ETMAS_ERR_CONFIG;
  } catch (const MissingStateLyapunov& e) {
    g_last_error = e.what();
    return ETMAS_ERR_CONFIG;
  } catch (const MissingJacobian& e) {
    g_last_error = e.what();
    return ETMAS_ERR_CONFIG;
  } catch (const InfeasibleInitialization& e) {
    g_last_error = e.what();
    return ETMAS_ERR_INFEASIBLE;
  } catch (const DegenerateDenominator& e) {
    g_last_error = e.what();
    return ETMAS_ERR_INFEASIBLE;
  } catch (const NonFiniteState& e) {
    g_last_error = e.what();
    return ETMAS_ERR_NUMERIC;
  } catch (const TauOutOfRange& e) {
    g_last_error = e.what();
    return ETMAS_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ETMAS_ERR;
  } catch (...) {
    g_last_error = "unknown failure";
    return ETMAS_ERR;
  }
}

int require(bool ok, const char* msg) {
  if (ok) return ETMAS_OK;
  g_last_error = msg;
  return ETMAS_ERR_CONFIG;
}

std::vector<double> effective_ratios(const RunConfig& rc) {
  if (!rc.ratios.empty()) return rc.ratios;
  std::vector<double> r;
  for (int i = 0; i <= 10; ++i) r.push_back(0.1 * i);
  return r;
}

}  // namespace

extern "C" {

const char* etmas_version(void) { return "1.0.0"; }

const char* etmas_last_error(void) { return g_last_error.c_str(); }

void etmas_string_free(char* s) { delete[] s; }

int etmas_config_canonical(const char* config_text, char** out) {
  if (int rc = require(config_text && out, "null argument")) return rc;
  return guard([&] { *out = dup_string(dump_config(parse_config(config_text))); });
}

int etmas_scenario_from_config(const char* config_text, etmas_scenario** out) {
  if (int rc = require(config_text && out, "null argument")) return rc;
  return guard([&] {
    auto* h = new etmas_scenario;
    try {
      h->rc = parse_config(config_text);
      h->sc = make_scenario(h->rc);
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

void etmas_scenario_free(etmas_scenario* s) { delete s; }

int etmas_scenario_num_nets(const etmas_scenario* s, int* out) {
  if (int rc = require(s && out, "null argument")) return rc;
  *out = static_cast<int>(s->sc.nets.size());
  return ETMAS_OK;
}

int etmas_simulate(const etmas_scenario* s, etmas_trace** out) {
  if (int rc = require(s && out, "null argument")) return rc;
  return guard([&] {
    auto* t = new etmas_trace;
    try {
      t->tr = run(s->sc, s->rc.horizon, s->rc.step, etm_mode_of(s->rc), s->rc.decimation);
    } catch (...) {
      delete t;
      throw;
    }
    *out = t;
  });
}

void etmas_trace_free(etmas_trace* t) { delete t; }

int etmas_trace_rows(const etmas_trace* t, long* out) {
  if (int rc = require(t && out, "null argument")) return rc;
  *out = static_cast<long>(t->tr.rows.size());
  return ETMAS_OK;
}

int etmas_trace_csv(const etmas_trace* t, char** out) {
  if (int rc = require(t && out, "null argument")) return rc;
  return guard([&] { *out = dup_string(trace_to_csv(t->tr)); });
}

int etmas_trace_jsonl(const etmas_trace* t, char** out) {
  if (int rc = require(t && out, "null argument")) return rc;
  return guard([&] { *out = dup_string(trace_to_jsonl(t->tr)); });
}

int etmas_trace_summary_json(const etmas_trace* t, char** out) {
  if (int rc = require(t && out, "null argument")) return rc;
  return guard([&] { *out = dup_string(summary_json(t->tr)); });
}

int etmas_event_counts(const etmas_trace* t, int net, long* samplings, long* fired,
                       long* updates) {
  if (int rc = require(t && samplings && fired && updates, "null argument")) return rc;
  if (int rc = require(net >= 1 && net <= t->tr.num_nets, "network index out of range"))
    return rc;
  return guard([&] {
    const auto counts = event_counts(t->tr);
    *samplings = counts[net - 1].samplings;
    *fired = counts[net - 1].fired;
    *updates = counts[net - 1].updates;
  });
}

int etmas_trace_monitor(etmas_trace* t, const etmas_scenario* s, double slack,
                        char** report_json) {
  if (int rc = require(t && s && report_json, "null argument")) return rc;
  return guard([&] {
    // extend_zero keeps diagnostics available past the certified window.
    const MonitorConfig cfg = monitor_config_for(s->sc, 1e-5, /*extend_zero=*/true);
    annotate(t->tr, cfg);
    const MonitorReport rep = check_trace(t->tr, cfg, slack);
    *report_json = dup_string(::etmas::report_json(rep));
  });
}

int etmas_certify_json(const etmas_scenario* s, double grid_step, char** out) {
  if (int rc = require(s && out, "null argument")) return rc;
  return guard([&] {
    if (grid_step <= 0.0) grid_step = 1e-5;
    nlohmann::json arr = nlohmann::json::array();
    for (size_t i = 0; i < s->sc.nets.size(); ++i) {
      const NetSpec& net = s->sc.nets[i];
      const double lb = lambda_bar(net.cert);
      const double p0 = net.phi0_init > 0.0 ? net.phi0_init : default_phi0(lb);
      const double p1 = net.phi1_init > 0.0 ? net.phi1_init : p0;
      nlohmann::json o;
      o["net"] = i + 1;
      o["lambda_bar"] = lb;
      o["phi0"] = p0;
      o["phi1"] = p1;
      o["varrho0"] = net.cert.varrho0;
      o["varrho1"] = net.cert.varrho1;
      if (net.Delta > 0.0) {
        const CertResult r = masp_mad_search(net.cert, {p0, p1}, grid_step);
        o["T"] = r.T;
        o["Delta"] = r.Delta;
        o["feasible"] = r.feasible;
        o["margin"] = r.margin;
        o["warnings"] = r.warnings;
      } else {
        o["T"] = masp_delay_free(net.cert, p0, grid_step);
        o["Delta"] = 0.0;
        o["feasible"] = true;
      }
      arr.push_back(std::move(o));
    }
    *out = dup_string(arr.dump(2) + "\n");
  });
}

int etmas_sweep(const etmas_scenario* s, double grid_step, int threads, char** out_csv,
                char** out_json) {
  if (int rc = require(s && out_csv && out_json, "null argument")) return rc;
  return guard([&] {
    if (grid_step <= 0.0) grid_step = 1e-5;
    std::vector<CertificateParams> nets;
    for (const NetSpec& n : s->sc.nets) nets.push_back(n.cert);
    const SweepTable table = sweep_table(nets, effective_ratios(s->rc), grid_step, threads);
    *out_csv = dup_string(table.to_csv());
    *out_json = dup_string(table.to_json());
  });
}

}  // extern "C"
