// Command-line surface over the shared library: scenario simulation,
// certification, MASP sweeps, and config canonicalization.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "etmas.h"

namespace {

struct Options {
  std::string config_path;
  std::string scenario;
  std::string etm;
  std::string out_dir = ".";
  std::string ratios;
  double horizon = 0.0, step = 0.0, rho_ratio = -1.0;
  bool monitor = false;
  int decimation = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Assembles the effective config document: file content first, then the
// explicitly given flags as a trailing [global] override block.
std::string build_config(const Options& opt, const CLI::App* cmd) {
  std::string text;
  if (!opt.config_path.empty()) text = read_file(opt.config_path);
  text += "\n[global]\n";
  if (cmd->count("--scenario")) text += "scenario = " + opt.scenario + "\n";
  if (cmd->count("--horizon")) text += "horizon = " + num(opt.horizon) + "\n";
  if (cmd->count("--step")) text += "step = " + num(opt.step) + "\n";
  if (cmd->count("--etm")) text += "etm = " + opt.etm + "\n";
  if (cmd->count("--rho-ratio")) text += "rho_ratio = " + num(opt.rho_ratio) + "\n";
  if (cmd->count("--decimation"))
    text += "decimation = " + std::to_string(opt.decimation) + "\n";
  if (cmd->count("--ratios")) text += "ratios = " + opt.ratios + "\n";
  if (opt.monitor) text += "monitor = true\n";
  return text;
}

int fail(int status, const char* what) {
  std::cerr << "error (" << what << "): " << etmas_last_error() << "\n";
  return status;
}

struct ScenarioHandle {
  etmas_scenario* s = nullptr;
  ~ScenarioHandle() { etmas_scenario_free(s); }
};
struct TraceHandle {
  etmas_trace* t = nullptr;
  ~TraceHandle() { etmas_trace_free(t); }
};
struct StringHandle {
  char* p = nullptr;
  ~StringHandle() { etmas_string_free(p); }
};

int cmd_simulate(const Options& opt, const CLI::App* cmd) {
  const std::string text = build_config(opt, cmd);
  ScenarioHandle sh;
  if (int rc = etmas_scenario_from_config(text.c_str(), &sh.s)) return fail(rc, "config");
  TraceHandle th;
  if (int rc = etmas_simulate(sh.s, &th.t)) return fail(rc, "simulate");

  std::filesystem::create_directories(opt.out_dir);
  if (opt.monitor) {
    StringHandle report;
    if (int rc = etmas_trace_monitor(th.t, sh.s, 1e-9, &report.p))
      return fail(rc, "monitor");
    write_file(opt.out_dir + "/monitor.json", report.p);
  }
  StringHandle csv, jsonl, summary;
  if (int rc = etmas_trace_csv(th.t, &csv.p)) return fail(rc, "trace export");
  if (int rc = etmas_trace_jsonl(th.t, &jsonl.p)) return fail(rc, "trace export");
  if (int rc = etmas_trace_summary_json(th.t, &summary.p)) return fail(rc, "summary");
  write_file(opt.out_dir + "/trace.csv", csv.p);
  write_file(opt.out_dir + "/trace.jsonl", jsonl.p);
  write_file(opt.out_dir + "/summary.json", summary.p);
  std::cout << summary.p;
  return 0;
}

int cmd_certify(const Options& opt, const CLI::App* cmd) {
  const std::string text = build_config(opt, cmd);
  ScenarioHandle sh;
  if (int rc = etmas_scenario_from_config(text.c_str(), &sh.s)) return fail(rc, "config");
  StringHandle out;
  if (int rc = etmas_certify_json(sh.s, 1e-5, &out.p)) return fail(rc, "certify");
  std::filesystem::create_directories(opt.out_dir);
  write_file(opt.out_dir + "/certify.json", out.p);
  std::cout << out.p;
  return 0;
}

int cmd_sweep(const Options& opt, const CLI::App* cmd) {
  const std::string text = build_config(opt, cmd);
  ScenarioHandle sh;
  if (int rc = etmas_scenario_from_config(text.c_str(), &sh.s)) return fail(rc, "config");
  StringHandle csv, json;
  if (int rc = etmas_sweep(sh.s, 1e-5, 0, &csv.p, &json.p)) return fail(rc, "sweep");
  std::filesystem::create_directories(opt.out_dir);
  write_file(opt.out_dir + "/sweep.csv", csv.p);
  write_file(opt.out_dir + "/sweep.json", json.p);
  std::cout << csv.p;
  return 0;
}

int cmd_dump_config(const Options& opt, const CLI::App* cmd) {
  const std::string text = build_config(opt, cmd);
  StringHandle out;
  if (int rc = etmas_config_canonical(text.c_str(), &out.p)) return fail(rc, "config");
  std::cout << out.p;
  return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config_path, "Config file (key = value with [net N] sections)");
  cmd->add_option("--scenario", opt.scenario,
                  "robot-arms-rr | robot-arms-tod | robot-arms-mixed | "
                  "observers-coupled | observers-decoupled");
  cmd->add_option("--horizon", opt.horizon, "Simulation horizon, seconds");
  cmd->add_option("--step", opt.step, "Integrator step, seconds");
  cmd->add_option("--etm", opt.etm, "Trigger mode: etc | ttc | centralized")
      ->check(CLI::IsMember({"etc", "ttc", "centralized"}));
  cmd->add_option("--rho-ratio", opt.rho_ratio, "Trigger aggressiveness as a fraction of rho_bar");
  cmd->add_option("--out", opt.out_dir, "Output directory");
  cmd->add_option("--decimation", opt.decimation, "Record every n-th integrator step");
  cmd->add_option("--ratios", opt.ratios, "Sweep ratios, comma-separated");
  cmd->add_flag("--monitor", opt.monitor, "Evaluate the Lyapunov monitor along the trace");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-triggered multi-agent simulation and certification toolkit"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* sim = app.add_subcommand("simulate", "Run a scenario and export the trace");
  CLI::App* cert = app.add_subcommand("certify", "Largest sampling period / delay per network");
  CLI::App* sweep = app.add_subcommand("sweep", "MASP table over trigger-aggressiveness ratios");
  CLI::App* dump = app.add_subcommand("dump-config", "Print the canonical effective config");
  for (CLI::App* cmd : {sim, cert, sweep, dump}) add_common(cmd, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(opt, sim);
    if (cert->parsed()) return cmd_certify(opt, cert);
    if (sweep->parsed()) return cmd_sweep(opt, sweep);
    if (dump->parsed()) return cmd_dump_config(opt, dump);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
