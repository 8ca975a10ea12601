#include "etmas/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include <limits>

#include "json.hpp"

namespace etmas {

namespace {

constexpr double kHorizon = 1e6;   // solve_phi always early-exits at the crossing
constexpr double kRefine = 1e-6;   // boundary refinement tolerance, seconds
constexpr double kPhiCap = 1e6;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Largest time with f(tau) >= 0 given samples of a decreasing continuous f on
// the solution grid; linear refinement inside the first failing interval.
double prefix_boundary(const PhiSolution& a, const std::function<double(double, double)>& slack_fn,
                       const PhiSolution& b) {
  // slack_fn(phi0_val, phi1_val) at a common grid time; a's grid is the master.
  double prev_t = a.grid[0];
  double prev_s = slack_fn(a.values[0], b.at(a.grid[0], true));
  if (prev_s < 0.0) return 0.0;
  for (size_t k = 1; k < a.grid.size(); ++k) {
    const double t = a.grid[k];
    const double s = slack_fn(a.values[k], b.at(t, true));
    if (s < 0.0) {
      const double w = prev_s / (prev_s - s);
      return prev_t + w * (t - prev_t);
    }
    prev_t = t;
    prev_s = s;
  }
  return a.grid.back();
}

}  // namespace

double default_phi0(double lambda_bar_value) {
  if (lambda_bar_value <= 1.0 / kPhiCap) return kPhiCap;
  return std::min((1.0 - 1e-9) / lambda_bar_value, kPhiCap);
}

double masp_delay_free(const CertificateParams& p, double phi0, double grid_step) {
  const double lbar = lambda_bar(p);
  if (lbar >= 1.0) return 0.0;
  if (phi0 <= 1.0) throw InfeasibleInitialization("masp_delay_free: phi(0) must exceed 1");
  if (lbar > 0.0 && phi0 * lbar >= 1.0)
    throw InfeasibleInitialization("masp_delay_free: phi(0) must stay below 1/lambda_bar");
  const PhiSolution sol = solve_phi(p.L0, p.gamma0, p.varrho0, phi0, kHorizon, grid_step);
  if (!sol.has_crossing())
    throw InfeasibleInitialization("masp_delay_free: phi never reached zero");
  return std::max(0.0, sol.crossing() - kRefine);
}

CertResult masp_mad_search(const CertificateParams& p, std::pair<double, double> phi0_pair,
                           double grid_step) {
  CertResult r;
  r.phi0_pair = phi0_pair;
  const double lbar = lambda_bar(p);
  if (lbar >= 1.0)
    throw InfeasibleInitialization("masp_mad_search: admissible phi(0) window is empty");
  const double p0 = phi0_pair.first, p1 = phi0_pair.second;
  if (p0 <= 0.0 || p1 <= 0.0)
    throw InfeasibleInitialization("masp_mad_search: phi(0) values must be positive");
  if (p.varrho0 <= 0.0 || p.varrho1 <= 0.0)
    throw InfeasibleInitialization("masp_mad_search: varrho values must be positive");

  auto window_warn = [&](double v, const char* name) {
    if (!(v > 1.0 && (lbar == 0.0 || v * lbar < 1.0)))
      r.warnings.push_back(std::string(name) + "=" + fmt(v) +
                           " lies outside the theoretical window (1, 1/lambda_bar)");
  };
  window_warn(p0, "phi_0(0)");
  window_warn(p1, "phi_1(0)");
  const double vmax0 = 1.0 / (lbar * lbar * p0 * p0) - 1.0;
  if (lbar > 0.0 && p.varrho0 >= vmax0)
    r.warnings.push_back("varrho0 exceeds the admissible slack window");

  const PhiSolution sol0 = solve_phi(p.L0, p.gamma0, p.varrho0, p0, kHorizon, grid_step);
  const PhiSolution sol1 = solve_phi(p.L1, p.gamma1, p.varrho1, p1, kHorizon, grid_step);

  // Sampling-period condition: gamma0*phi_0(tau) >= (1+varrho1)*lbar^2*gamma1*phi_1(0).
  const double rhs1 = (1.0 + p.varrho1) * lbar * lbar * p.gamma1 * p1;
  const double bound1 =
      prefix_boundary(sol0, [&](double v0, double) { return p.gamma0 * v0 - rhs1; }, sol1);
  double T = std::min(bound1, sol0.has_crossing() ? sol0.crossing() - kRefine
                                                  : sol0.grid.back());
  T = std::max(0.0, T);

  // Delay condition: gamma1*phi_1(tau) >= (1+varrho0)*gamma0*phi_0(tau), tau <= T.
  const double bound2 = prefix_boundary(
      sol0, [&](double v0, double v1) { return p.gamma1 * v1 - (1.0 + p.varrho0) * p.gamma0 * v0; },
      sol1);
  double Delta = std::min({bound2, T, sol1.has_crossing() ? sol1.crossing() - kRefine
                                                          : sol1.grid.back()});
  Delta = std::max(0.0, Delta);

  r.T = T;
  r.Delta = Delta;
  r.feasible = T > 0.0;

  // Minimum slack of both inequalities over the certified ranges.
  double margin = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < sol0.grid.size() && sol0.grid[k] <= T; ++k) {
    margin = std::min(margin, p.gamma0 * sol0.values[k] - rhs1);
    if (sol0.grid[k] <= Delta) {
      const double v1 = sol1.at(sol0.grid[k], true);
      margin = std::min(margin, p.gamma1 * v1 - (1.0 + p.varrho0) * p.gamma0 * sol0.values[k]);
    }
  }
  r.margin = std::isfinite(margin) ? margin : 0.0;
  return r;
}

SweepTable sweep_table(const std::vector<CertificateParams>& nets,
                       const std::vector<double>& ratios, double grid_step, int threads) {
  SweepTable table;
  table.ratios = ratios;
  table.cells.assign(ratios.size(), std::vector<SweepCell>(nets.size()));
  if (ratios.empty() || nets.empty()) return table;

  if (threads <= 0) {
    if (const char* env = std::getenv("ETMAS_THREADS")) threads = std::atoi(env);
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }

  struct Job {
    size_t row, net;
  };
  std::vector<Job> jobs;
  for (size_t r = 0; r < ratios.size(); ++r)
    for (size_t n = 0; n < nets.size(); ++n) jobs.push_back({r, n});

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job job = jobs[k];
      SweepCell& cell = table.cells[job.row][job.net];
      try {
        CertificateParams p = nets[job.net];
        const double ratio = ratios[job.row];
        if (ratio < 0.0 || ratio > 1.0) throw ConfigViolation("ratio outside [0, 1]");
        p.rho = ratio * rho_bar(p.Lbar0, p.gamma0);
        const double lbar = lambda_bar(p);
        const double phi0 = default_phi0(lbar);
        // An empty admissible phi(0) window is the T -> 0 limit, not an error.
        if (lbar >= 1.0 || phi0 <= 1.0) {
          cell.T = 0.0;
          continue;
        }
        cell.T = masp_delay_free(p, phi0, grid_step);
      } catch (const std::exception& ex) {
        cell.note = ex.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(threads, static_cast<int>(jobs.size()));
  pool.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return table;
}

std::string SweepTable::to_csv() const {
  std::string out = "ratio";
  for (int n = 0; n < num_nets(); ++n) out += ",T_net" + std::to_string(n + 1);
  out += "\n";
  for (size_t r = 0; r < ratios.size(); ++r) {
    out += fmt(ratios[r]);
    for (const SweepCell& c : cells[r]) {
      out += ",";
      if (c.T) out += fmt(*c.T);
    }
    out += "\n";
  }
  return out;
}

std::string SweepTable::to_json() const {
  nlohmann::json j;
  j["ratios"] = ratios;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (size_t r = 0; r < ratios.size(); ++r) {
    nlohmann::json row;
    row["ratio"] = ratios[r];
    auto& ts = row["T"] = nlohmann::json::array();
    for (const SweepCell& c : cells[r]) {
      if (c.T)
        ts.push_back(*c.T);
      else
        ts.push_back(nullptr);
    }
    for (const SweepCell& c : cells[r])
      if (!c.note.empty()) row["notes"].push_back(c.note);
    rows.push_back(std::move(row));
  }
  return j.dump(2);
}

}  // namespace etmas
