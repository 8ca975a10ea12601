#include "etmas/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace etmas {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> component_names(const std::vector<std::string>& declared,
                                         const char* prefix, long n) {
  if (static_cast<long>(declared.size()) == n) return declared;
  std::vector<std::string> out;
  for (long i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i + 1));
  return out;
}

nlohmann::json vec_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

nlohmann::json ivec_json(const IVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

std::string trace_to_csv(const Trace& trace) {
  const long nx = trace.rows.empty() ? 0 : trace.rows.front().x.size();
  const long ne = trace.rows.empty() ? 0 : trace.rows.front().e.size();
  const auto xn = component_names(trace.x_names, "x", nx);
  const auto en = component_names(trace.e_names, "e", ne);

  std::string out = "t,j,net,event";
  for (const auto& n : xn) out += "," + n;
  for (const auto& n : en) out += "," + n;
  out += ",|eta|,|e_ax|";
  for (int i = 1; i <= trace.num_nets; ++i) out += ",Gamma_net" + std::to_string(i);
  out += ",U\n";

  for (const TraceRow& row : trace.rows) {
    out += num(row.t) + "," + std::to_string(row.j) + "," + std::to_string(row.net) + "," +
           event_tag_name(row.tag);
    for (int i = 0; i < row.x.size(); ++i) out += "," + num(row.x[i]);
    for (int i = 0; i < row.e.size(); ++i) out += "," + num(row.e[i]);
    out += "," + num(row.eta_norm) + "," + num(row.eax_norm);
    for (int i = 0; i < row.gamma.size(); ++i) out += "," + num(row.gamma[i]);
    out += "," + num(row.U) + "\n";
  }
  return out;
}

std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  for (const TraceRow& row : trace.rows) {
    nlohmann::json o;
    o["t"] = row.t;
    o["j"] = row.j;
    o["net"] = row.net;
    o["event"] = event_tag_name(row.tag);
    o["x"] = vec_json(row.x);
    o["e"] = vec_json(row.e);
    o["m"] = vec_json(row.m);
    o["tau"] = vec_json(row.tau);
    o["kappa"] = ivec_json(row.kappa);
    o["b"] = ivec_json(row.b);
    o["gamma"] = vec_json(row.gamma);
    o["eta_norm"] = row.eta_norm;
    o["eax_norm"] = row.eax_norm;
    if (std::isfinite(row.U)) o["U"] = row.U;
    out += o.dump() + "\n";
  }
  return out;
}

std::string summary_json(const Trace& trace) {
  nlohmann::json o;
  o["networks"] = trace.num_nets;
  o["rows"] = trace.rows.size();
  nlohmann::json events = nlohmann::json::array();
  const auto counts = event_counts(trace);
  for (int i = 0; i < trace.num_nets; ++i) {
    events.push_back({{"net", i + 1},
                      {"samplings", counts[i].samplings},
                      {"fired", counts[i].fired},
                      {"updates", counts[i].updates}});
  }
  o["events"] = events;
  if (!trace.rows.empty()) {
    const TraceRow& last = trace.rows.back();
    o["final"] = {{"t", last.t},
                  {"j", last.j},
                  {"eta_norm", last.eta_norm},
                  {"eax_norm", last.eax_norm}};
  }
  return o.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open for writing: " + path);
  f << content;
}

}  // namespace etmas
