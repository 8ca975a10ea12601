#include "etmas/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace etmas {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_num(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigViolation("config: bad numeric value for '" + key + "': " + v);
  }
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigViolation("config: bad boolean value for '" + key + "': " + v);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.ratios.clear();
  std::istringstream in(text);
  std::string line;
  int section = -1;  // -1 = top level, otherwise 0-based net index
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigViolation("config: unterminated section: " + line);
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name == "global") {  // returns to top-level keys (used for appended overrides)
        section = -1;
        continue;
      }
      if (name.rfind("net ", 0) != 0)
        throw ConfigViolation("config: unknown section: [" + name + "]");
      const int idx = static_cast<int>(parse_num(trim(name.substr(4)), "net section"));
      if (idx < 1) throw ConfigViolation("config: network indices are 1-based");
      section = idx - 1;
      if (static_cast<int>(cfg.nets.size()) < idx) cfg.nets.resize(idx);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigViolation("config: expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (section < 0) {
      if (key == "scenario") cfg.scenario = val;
      else if (key == "horizon") cfg.horizon = parse_num(val, key);
      else if (key == "step") cfg.step = parse_num(val, key);
      else if (key == "etm") {
        if (val != "etc" && val != "ttc" && val != "centralized")
          throw ConfigViolation("config: etm must be etc, ttc or centralized");
        cfg.etm = val;
      } else if (key == "rho_ratio") cfg.rho_ratio = parse_num(val, key);
      else if (key == "monitor") cfg.monitor = parse_bool(val, key);
      else if (key == "decimation") cfg.decimation = static_cast<int>(parse_num(val, key));
      else if (key == "ratios") {
        cfg.ratios.clear();
        std::istringstream rs(val);
        std::string tok;
        while (std::getline(rs, tok, ','))
          cfg.ratios.push_back(parse_num(trim(tok), key));
      } else throw ConfigViolation("config: unknown key: " + key);
    } else {
      NetOverride& ov = cfg.nets[section];
      if (key == "T") ov.T = parse_num(val, key);
      else if (key == "Delta") ov.Delta = parse_num(val, key);
      else if (key == "h") ov.h = parse_num(val, key);
      else if (key == "delay") ov.delay = parse_num(val, key);
      else if (key == "rho") ov.rho = parse_num(val, key);
      else if (key == "epsilon") ov.epsilon = parse_num(val, key);
      else throw ConfigViolation("config: unknown network key: " + key);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigViolation("config: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& cfg) {
  std::string out;
  out += "scenario = " + cfg.scenario + "\n";
  out += "horizon = " + num(cfg.horizon) + "\n";
  out += "step = " + num(cfg.step) + "\n";
  out += "etm = " + cfg.etm + "\n";
  out += "rho_ratio = " + num(cfg.rho_ratio) + "\n";
  out += std::string("monitor = ") + (cfg.monitor ? "true" : "false") + "\n";
  out += "decimation = " + std::to_string(cfg.decimation) + "\n";
  if (!cfg.ratios.empty()) {
    out += "ratios = ";
    for (size_t i = 0; i < cfg.ratios.size(); ++i)
      out += (i ? "," : "") + num(cfg.ratios[i]);
    out += "\n";
  }
  for (size_t i = 0; i < cfg.nets.size(); ++i) {
    const NetOverride& ov = cfg.nets[i];
    if (!ov.T && !ov.Delta && !ov.h && !ov.delay && !ov.rho && !ov.epsilon) continue;
    out += "\n[net " + std::to_string(i + 1) + "]\n";
    if (ov.T) out += "T = " + num(*ov.T) + "\n";
    if (ov.Delta) out += "Delta = " + num(*ov.Delta) + "\n";
    if (ov.h) out += "h = " + num(*ov.h) + "\n";
    if (ov.delay) out += "delay = " + num(*ov.delay) + "\n";
    if (ov.rho) out += "rho = " + num(*ov.rho) + "\n";
    if (ov.epsilon) out += "epsilon = " + num(*ov.epsilon) + "\n";
  }
  return out;
}

EtmMode etm_mode_of(const RunConfig& cfg) {
  if (cfg.etm == "ttc") return EtmMode::TimeTriggered;
  if (cfg.etm == "centralized") return EtmMode::Centralized;
  return EtmMode::Decentralized;
}

Scenario make_scenario(const RunConfig& cfg) {
  Scenario s = scenario_by_name(cfg.scenario, cfg.rho_ratio);
  if (cfg.nets.size() > s.nets.size())
    throw ConfigViolation("config: override section for network " +
                          std::to_string(cfg.nets.size()) + " but the scenario has " +
                          std::to_string(s.nets.size()) + " networks");
  for (size_t i = 0; i < cfg.nets.size(); ++i) {
    const NetOverride& ov = cfg.nets[i];
    NetSpec& net = s.nets[i];
    if (ov.T) net.T = *ov.T;
    if (ov.Delta) net.Delta = *ov.Delta;
    if (ov.h) net.h = *ov.h;
    if (ov.delay) net.delay = *ov.delay;
    if (ov.rho) net.cert.rho = *ov.rho;
    if (ov.epsilon) net.epsilon = *ov.epsilon;
  }
  // Sampling-interval/delay ordering: epsilon <= h <= T and
  // 0 <= delay <= min(Delta, h) must hold for every network.
  for (size_t i = 0; i < s.nets.size(); ++i) {
    const NetSpec& net = s.nets[i];
    const auto bad = [&](const std::string& what) {
      throw ConfigViolation("sampling/delay ordering violated for network " +
                            std::to_string(i + 1) + ": " + what);
    };
    const double h = net.h > 0.0 ? net.h : net.T;
    if (net.Delta > net.T + 1e-15) bad("Delta exceeds T");
    if (h < net.epsilon) bad("sampling interval below epsilon");
    if (net.T > 0.0 && h > net.T + 1e-15) bad("sampling interval exceeds T");
    if (net.delay > std::min(net.Delta, h) + 1e-15) bad("delay exceeds min(Delta, h)");
  }
  return s;
}

}  // namespace etmas
