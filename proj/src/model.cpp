#include "etmas/model.hpp"

#include <cmath>

namespace etmas {

namespace {

constexpr double kFdStep = 1e-6;

Eigen::MatrixXd fd_jacobian(const std::function<Vec(const Vec&)>& fn, const Vec& x) {
  const Vec y0 = fn(x);
  Eigen::MatrixXd jac(y0.size(), x.size());
  Vec xp = x, xm = x;
  for (int c = 0; c < x.size(); ++c) {
    xp[c] += kFdStep;
    xm[c] -= kFdStep;
    jac.col(c) = (fn(xp) - fn(xm)) / (2.0 * kFdStep);
    xp[c] = x[c];
    xm[c] = x[c];
  }
  return jac;
}

}  // namespace

void validate_adjacency(const Eigen::MatrixXi& adj, const std::string& which) {
  const int n = static_cast<int>(adj.rows());
  if (adj.cols() != n) throw ConfigViolation(which + ": adjacency must be square");
  for (int i = 0; i < n; ++i) {
    if (adj(i, i) != 0) throw ConfigViolation(which + ": adjacency diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (adj(i, j) != 0 && adj(i, j) != 1)
        throw ConfigViolation(which + ": adjacency entries must be 0/1");
      if (adj(i, j) != adj(j, i))
        throw ConfigViolation(which + ": adjacency must be symmetric (undirected graph)");
    }
  }
  // Connectivity by breadth-first search from vertex 0.
  if (n == 0) return;
  std::vector<int> seen(n, 0), stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < n; ++u)
      if (adj(v, u) == 1 && !seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  if (count != n) throw ConfigViolation(which + ": graph is not connected");
}

ComposedFlow compose_tracking_flow(const PlantModel& model, bool analytic) {
  if (analytic && !model.g_p_jac)
    throw MissingJacobian("compose_tracking_flow: analytic Jacobian of g_p not supplied");
  if (model.adj_p.size() > 0) validate_adjacency(model.adj_p, "agent graph");
  if (model.adj_rf.size() > 0) validate_adjacency(model.adj_rf, "reference graph");

  const PlantModel m = model;  // captured by value: the flow outlives the caller

  auto gp_jac = [m, analytic](const Vec& x) -> Eigen::MatrixXd {
    if (analytic) return m.g_p_jac(x);
    return fd_jacobian(m.g_p, x);
  };

  // Held measurements seen by the controller: the transform e_eta = e_p - e_rf
  // makes the plant-side hold error e_p = e_eta + e_rf.
  auto yhat_p = [m](const Vec& eta, const Vec& x_rf, const Vec& e_eta, const Vec& e_rf) {
    return Vec(m.g_p(eta + x_rf) + e_eta + e_rf);
  };
  auto yhat_rf = [m](const Vec& x_rf, const Vec& e_rf) { return Vec(m.g_p(x_rf) + e_rf); };

  ComposedFlow out;

  out.F_rf = [m](double t, const Vec&, const Vec& x_rf, const Vec&, const Vec&, const Vec&,
                 const Vec&, const Vec& e_f, const Vec&, const Vec& w_rf) {
    return m.f_p(x_rf, m.u_f(t) + e_f, w_rf, t);
  };

  out.F_eta = [m, yhat_p, yhat_rf](double t, const Vec& eta, const Vec& x_rf, const Vec& x_ct,
                                   const Vec& e_eta, const Vec& e_ct, const Vec& e_rf,
                                   const Vec& e_f, const Vec& w_p, const Vec& w_rf) {
    const Vec uf = m.u_f(t);
    const Vec u_plant =
        m.g_c(x_ct, yhat_p(eta, x_rf, e_eta, e_rf), yhat_rf(x_rf, e_rf), t) + e_ct + uf + e_f;
    return Vec(m.f_p(eta + x_rf, u_plant, w_p, t) - m.f_p(x_rf, uf + e_f, w_rf, t));
  };

  out.F_ct = [m, yhat_p, yhat_rf](double t, const Vec& eta, const Vec& x_rf, const Vec& x_ct,
                                  const Vec& e_eta, const Vec&, const Vec& e_rf, const Vec&,
                                  const Vec&, const Vec&) {
    if (m.n_ct == 0) return Vec(Vec::Zero(0));
    return m.f_c(x_ct, yhat_p(eta, x_rf, e_eta, e_rf), yhat_rf(x_rf, e_rf), t);
  };

  out.G_rf = [m, gp_jac, F_rf = out.F_rf](double t, const Vec& eta, const Vec& x_rf,
                                          const Vec& x_ct, const Vec& e_eta, const Vec& e_ct,
                                          const Vec& e_rf, const Vec& e_f, const Vec& w_p,
                                          const Vec& w_rf) {
    const Vec frf = F_rf(t, eta, x_rf, x_ct, e_eta, e_ct, e_rf, e_f, w_p, w_rf);
    return Vec(-gp_jac(x_rf) * frf);
  };

  out.G_ax = [m, gp_jac, F_eta = out.F_eta, F_rf = out.F_rf, F_ct = out.F_ct](
                 double t, const Vec& eta, const Vec& x_rf, const Vec& x_ct, const Vec& e_eta,
                 const Vec& e_ct, const Vec& e_rf, const Vec& e_f, const Vec& w_p,
                 const Vec& w_rf) {
    const Vec feta = F_eta(t, eta, x_rf, x_ct, e_eta, e_ct, e_rf, e_f, w_p, w_rf);
    const Vec frf = F_rf(t, eta, x_rf, x_ct, e_eta, e_ct, e_rf, e_f, w_p, w_rf);
    // d/dt e_eta = -d/dt [g_p(x_p) - g_p(x_rf)] with x_p = eta + x_rf.
    const Vec de_eta = -gp_jac(eta + x_rf) * (feta + frf) + gp_jac(x_rf) * frf;
    Vec de_ct = Vec::Zero(m.n_u);
    if (m.n_ct > 0) {
      const Vec fct = F_ct(t, eta, x_rf, x_ct, e_eta, e_ct, e_rf, e_f, w_p, w_rf);
      auto gc_of_state = [&](const Vec& xc) { return m.g_c(xc, Vec::Zero(m.n_y), Vec::Zero(m.n_y), t); };
      de_ct = -fd_jacobian(gc_of_state, x_ct) * fct;
    }
    Vec out_v(m.n_y + m.n_u);
    out_v.head(m.n_y) = de_eta;
    out_v.tail(m.n_u) = de_ct;
    return out_v;
  };

  out.G_f = [m](double t, const Vec&, const Vec&, const Vec&, const Vec&, const Vec&,
                const Vec&, const Vec&, const Vec&, const Vec&) {
    if (m.du_f) return Vec(-m.du_f(t));
    return Vec(-(m.u_f(t + kFdStep) - m.u_f(t - kFdStep)) / (2.0 * kFdStep));
  };

  return out;
}

// ---------------------------------------------------------------------------

Vec observer_theta(const ObserverModel& model, int i, const Vec& eta) {
  const int n = model.n();
  const int k = 1 - i;  // two observers, all-to-all
  const Vec eta_i = eta.segment(i * n, n);
  Vec theta = model.J[i] * (model.C[i] * eta_i);
  if (model.variant == ObserverModel::Variant::Coupled) {
    const Vec eta_k = eta.segment(k * n, n);
    theta += model.J_cross[i] * (model.C[k] * eta_k) + model.chi[i] * (eta_i - eta_k);
  }
  return theta;
}

ObserverFlow compose_observer_flow(const ObserverModel& model) {
  const ObserverModel m = model;
  const int n = m.n();
  const int nobs = m.num_obs();
  if (nobs != 2) throw ConfigViolation("compose_observer_flow: exactly two observers supported");

  ObserverFlow out;
  out.F_eta = [m, n, nobs](const Vec& eta, const Vec& vartheta, const Vec& w) {
    Vec d(n * nobs);
    for (int i = 0; i < nobs; ++i)
      d.segment(i * n, n) =
          m.A * eta.segment(i * n, n) + vartheta.segment(i * n, n) - m.B * w;
    return d;
  };
  out.G_psi = [m, n, F_eta = out.F_eta](int i, const Vec& eta, const Vec& vartheta,
                                        const Vec& w) {
    // psi_i = Theta_i(eta) - vartheta_i and vartheta is flat along flows, so
    // d/dt psi_i is the directional derivative of Theta_i along F_eta.
    const Vec deta = F_eta(eta, vartheta, w);
    const int k = 1 - i;
    const Vec deta_i = deta.segment(i * n, n);
    Vec dpsi = m.J[i] * (m.C[i] * deta_i);
    if (m.variant == ObserverModel::Variant::Coupled) {
      const Vec deta_k = deta.segment(k * n, n);
      dpsi += m.J_cross[i] * (m.C[k] * deta_k) + m.chi[i] * (deta_i - deta_k);
    }
    return dpsi;
  };
  return out;
}

}  // namespace etmas
