#include "etmas/scenario.hpp"

#include <cmath>

namespace etmas {

// ---------------------------------------------------------------------------
// Published constants (single source of truth, audited by a golden-file test).

RobotArmConstants robot_arm_constants(ProtocolKind protocol) {
  RobotArmConstants c{};
  c.a1 = 9.81 * 0.2;
  c.a2 = 9.81 * 0.3;
  c.c1 = 2.0;
  c.c2 = 4.0;
  c.b_coupling = 0.1;
  c.rho_bar1 = 0.0501;
  c.rho_bar2 = 0.0371;
  c.gamma10 = 22.9436;
  c.gamma20 = 30.9839;
  if (protocol == ProtocolKind::RoundRobin) {
    c.L10 = 8.8860;
    c.L11 = 18.8501;
    c.L20 = 12.0;
    c.L21 = 25.4558;
    c.gamma11 = 53.8629;
    c.gamma21 = 72.7386;
    c.phi0_net1 = 1.0956;
    c.phi0_net2 = 0.8774;
    c.T_fig = 0.015;
    c.Delta_fig = 0.0025;
  } else {
    c.L10 = 5.1303;
    c.L11 = 10.8831;
    c.L20 = 6.9282;
    c.L21 = 14.6969;
    c.gamma11 = 31.0978;
    c.gamma21 = 41.9956;
    c.phi0_net1 = 1.0419;
    c.phi0_net2 = 1.0419;
    c.T_fig = 0.015;
    c.Delta_fig = 0.003;
  }
  // The admissible-rho bound equals 1/(Lbar0 + gamma0) here, so the growth
  // rate of the trigger storage follows from the published bound.
  c.Lbar10 = 1.0 / c.rho_bar1 - c.gamma10;
  c.Lbar20 = 1.0 / c.rho_bar2 - c.gamma20;
  return c;
}

ObserverConstants observer_constants() {
  ObserverConstants c{};
  c.L1 = 1.8142;
  c.L2 = 1.4;
  c.gamma1 = 1.7243;
  c.gamma2 = 1.5045;
  c.mu1 = -0.4;
  c.mu2 = -0.2;
  const double J1[3] = {-0.5, -0.2, -0.1}, J12[3] = {-0.2, -0.2, -0.5};
  const double J21[3] = {0.2, 0.3, 0.3}, J2[3] = {-0.1, -0.5, 0.2};
  for (int k = 0; k < 3; ++k) {
    c.J1[k] = J1[k];
    c.J12[k] = J12[k];
    c.J21[k] = J21[k];
    c.J2[k] = J2[k];
  }
  c.chi1 = -0.4;
  c.chi2 = -0.4;
  c.T1 = 0.2;
  c.T2 = 0.4;
  const double xp0[3] = {1, 1, 1}, ob1[3] = {1, 3, 6}, ob2[3] = {-2, 2, 3.5};
  const double v1[3] = {1, 1, 1}, v2[3] = {-1, -1, -1};
  for (int k = 0; k < 3; ++k) {
    c.x_p0[k] = xp0[k];
    c.x_ob1_0[k] = ob1[k];
    c.x_ob2_0[k] = ob2[k];
    c.vartheta1_0[k] = v1[k];
    c.vartheta2_0[k] = v2[k];
  }
  return c;
}

// ---------------------------------------------------------------------------
// Robot arms

namespace {

PlantModel robot_arm_plant(const RobotArmConstants& c) {
  PlantModel m;
  m.n_p = 4;
  m.n_ct = 0;
  m.n_y = 4;
  m.n_u = 2;
  m.n_w = 4;
  const double a[2] = {c.a1, c.a2};
  const double cc[2] = {c.c1, c.c2};
  const double b = c.b_coupling;

  m.f_p = [a, cc, b](const Vec& x, const Vec& u, const Vec& w, double) {
    Vec d(4);
    for (int i = 0; i < 2; ++i) {
      const double q = x[2 * i], qd = x[2 * i + 1];
      const double couple = b * (x[0] - x[2]) + b * (x[1] - x[3]);
      d[2 * i] = qd;
      d[2 * i + 1] = -a[i] * std::sin(q) + couple + cc[i] * u[i];
    }
    return Vec(d + w);
  };
  m.g_p = [](const Vec& x) { return x; };
  m.g_p_jac = [](const Vec& x) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Identity(x.size(), x.size()));
  };
  m.g_c = [a, cc](const Vec&, const Vec& yp, const Vec& yrf, double) {
    Vec u(2);
    for (int i = 0; i < 2; ++i) {
      const double dq1 = yp[2 * i] - yrf[2 * i];
      const double dq2 = yp[2 * i + 1] - yrf[2 * i + 1];
      const double dsin = std::sin(yp[2 * i]) - std::sin(yrf[2 * i]);
      u[i] = (a[i] * dsin - dq1 - dq2) / cc[i];
    }
    return u;
  };
  m.u_f = [cc](double t) {
    Vec u(2);
    u << cc[0] * std::sin(5.0 * t), cc[1] * std::sin(5.0 * t);
    return u;
  };
  m.du_f = [cc](double t) {
    Vec u(2);
    u << 5.0 * cc[0] * std::cos(5.0 * t), 5.0 * cc[1] * std::cos(5.0 * t);
    return u;
  };
  m.adj_p = Eigen::MatrixXi{{0, 1}, {1, 0}};
  m.adj_rf = m.adj_p;
  return m;
}

NetSpec robot_arm_net(int i, ProtocolKind protocol, double rho_ratio,
                      const RobotArmConstants& c) {
  NetSpec n;
  n.name = "arm" + std::to_string(i + 1);
  n.partition.sizes = {1, 1, 1};  // position, velocity, controller output
  n.held_dim = 2;                 // reference-side output errors
  n.protocol = protocol;
  n.T = c.T_fig;
  n.Delta = c.Delta_fig;
  n.h = c.T_fig;
  n.delay = c.Delta_fig;
  n.epsilon = 1e-6;

  CertificateParams p;
  p.lambda = contraction_factor(protocol, n.partition);
  p.L0 = i == 0 ? c.L10 : c.L20;
  p.L1 = i == 0 ? c.L11 : c.L21;
  p.gamma0 = i == 0 ? c.gamma10 : c.gamma20;
  p.gamma1 = i == 0 ? c.gamma11 : c.gamma21;
  p.Lbar0 = i == 0 ? c.Lbar10 : c.Lbar20;
  p.theta0 = p.theta1 = 0.005;
  p.mu = 1.0;
  p.rho = rho_ratio * (i == 0 ? c.rho_bar1 : c.rho_bar2);
  n.cert = p;
  n.phi0_init = n.phi1_init = (i == 0 ? c.phi0_net1 : c.phi0_net2);

  const NodePartition part = n.partition;
  if (protocol == ProtocolKind::RoundRobin) {
    n.W = [part](const Vec& e, const Vec& m, int kappa, int b) {
      Vec ax = e.head(3);
      if (b == 1) ax += m.head(3);
      return rr_storage(kappa, ax, part);
    };
  } else {
    n.W = [](const Vec& e, const Vec& m, int, int b) {
      Vec ax = e.head(3);
      if (b == 1) ax += m.head(3);
      return ax.norm();
    };
  }
  // Trigger of the published example: output-side and reference-side errors
  // against the local tracking-error norm.
  n.trigger_W = [](const Vec& e) {
    return std::sqrt(e[0] * e[0] + e[1] * e[1] + e[3] * e[3] + e[4] * e[4]);
  };
  n.phi_term = [i](const Vec& x) { return x.segment(2 * i, 2).squaredNorm(); };
  return n;
}

}  // namespace

Scenario robot_arm_scenario(ProtocolKind net1, ProtocolKind net2, double rho_ratio) {
  const RobotArmConstants c1 = robot_arm_constants(net1);
  const RobotArmConstants c2 = robot_arm_constants(net2);
  const PlantModel plant = robot_arm_plant(c1);
  const ComposedFlow flow = compose_tracking_flow(plant, true);

  Scenario s;
  s.name = "robot-arms";
  s.w_dim = 4;
  s.x0 = Vec(8);
  s.x0 << 0.5, 0.5, -0.5, 0.5, 1.0, 0.0, 0.5, 0.0;  // (eta, x_rf)
  s.nets.push_back(robot_arm_net(0, net1, rho_ratio, c1));
  s.nets.push_back(robot_arm_net(1, net2, rho_ratio, c2));
  s.x_names = {"eta11", "eta12", "eta21", "eta22", "rf11", "rf12", "rf21", "rf22"};
  s.e_names = {"e_eta11", "e_eta12", "e_ct1", "e_rf11", "e_rf12",
               "e_eta21", "e_eta22", "e_ct2", "e_rf21", "e_rf22"};

  // Net-blocked <-> channel-stacked repacking around the composed maps.
  auto unpack = [](const Vec& e, Vec& e_eta, Vec& e_ct, Vec& e_rf) {
    e_eta.resize(4);
    e_ct.resize(2);
    e_rf.resize(4);
    for (int i = 0; i < 2; ++i) {
      e_eta.segment(2 * i, 2) = e.segment(5 * i, 2);
      e_ct[i] = e[5 * i + 2];
      e_rf.segment(2 * i, 2) = e.segment(5 * i + 3, 2);
    }
  };
  const Vec e_f = Vec::Zero(2);  // feedforward transmitted directly

  s.flow.f = [flow, unpack, e_f](double t, const Vec& delta, const Vec& x, const Vec& e,
                                 const Vec& w) {
    const Vec eta = x.head(4), x_rf = x.tail(4), x_ct = Vec::Zero(0);
    Vec e_eta, e_ct, e_rf;
    unpack(e, e_eta, e_ct, e_rf);
    const Vec w_rf = Vec::Zero(4);
    const double d = delta[0];
    Vec dx(8);
    dx.head(4) = flow.F_eta(d, eta, x_rf, x_ct, e_eta, e_ct, e_rf, e_f, w, w_rf);
    dx.tail(4) = flow.F_rf(d, eta, x_rf, x_ct, e_eta, e_ct, e_rf, e_f, w, w_rf);
    return dx;
  };
  s.flow.g = [flow, unpack, e_f](double t, const Vec& delta, const Vec& x, const Vec& e,
                                 const Vec& w) {
    const Vec eta = x.head(4), x_rf = x.tail(4), x_ct = Vec::Zero(0);
    Vec e_eta, e_ct, e_rf;
    unpack(e, e_eta, e_ct, e_rf);
    const Vec w_rf = Vec::Zero(4);
    const double d = delta[0];
    const Vec de_ax = flow.G_ax(d, eta, x_rf, x_ct, e_eta, e_ct, e_rf, e_f, w, w_rf);
    const Vec de_rf = flow.G_rf(d, eta, x_rf, x_ct, e_eta, e_ct, e_rf, e_f, w, w_rf);
    Vec de(10);
    for (int i = 0; i < 2; ++i) {
      de.segment(5 * i, 2) = de_ax.segment(2 * i, 2);
      de[5 * i + 2] = de_ax[4 + i];
      de.segment(5 * i + 3, 2) = de_rf.segment(2 * i, 2);
    }
    return de;
  };
  s.V = [](const Vec& x) { return x.head(4).squaredNorm(); };
  s.eta_dim = 4;
  return s;
}

Scenario robot_arm_scenario(ProtocolKind protocol, double rho_ratio) {
  return robot_arm_scenario(protocol, protocol, rho_ratio);
}

// ---------------------------------------------------------------------------
// Distributed observers

ObserverModel observer_model(bool coupled) {
  const ObserverConstants c = observer_constants();
  ObserverModel m;
  m.variant = coupled ? ObserverModel::Variant::Coupled : ObserverModel::Variant::Decoupled;
  m.A = Eigen::MatrixXd{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}};
  m.B = Eigen::Vector3d(1.0, 0.5, -1.0).asDiagonal();
  m.C = {Eigen::RowVector3d(1, 1, 0), Eigen::RowVector3d(0, 0, 1)};
  m.J = {Eigen::Vector3d(c.J1[0], c.J1[1], c.J1[2]),
         Eigen::Vector3d(c.J2[0], c.J2[1], c.J2[2])};
  m.J_cross = {Eigen::Vector3d(c.J12[0], c.J12[1], c.J12[2]),
               Eigen::Vector3d(c.J21[0], c.J21[1], c.J21[2])};
  m.chi = {c.chi1, c.chi2};
  return m;
}

Scenario observer_scenario(bool coupled, double rho_ratio) {
  const ObserverConstants c = observer_constants();
  const ObserverModel model = observer_model(coupled);
  const ObserverFlow flow = compose_observer_flow(model);

  Scenario s;
  s.name = coupled ? "observers-coupled" : "observers-decoupled";
  s.w_dim = 3;
  s.x0 = Vec(6);
  for (int k = 0; k < 3; ++k) {
    s.x0[k] = c.x_ob1_0[k] - c.x_p0[k];
    s.x0[3 + k] = c.x_ob2_0[k] - c.x_p0[k];
  }

  const double L[2] = {c.L1, c.L2};
  const double gamma[2] = {c.gamma1, c.gamma2};
  const double mu[2] = {c.mu1, c.mu2};
  const double Ts[2] = {c.T1, c.T2};
  for (int i = 0; i < 2; ++i) {
    NetSpec n;
    n.name = "obs" + std::to_string(i + 1);
    n.partition.sizes = {3};  // the injection correction is one node
    n.held_dim = 0;
    n.protocol = ProtocolKind::RoundRobin;
    n.T = Ts[i];
    n.Delta = 0.0;
    n.h = Ts[i];
    n.delay = 0.0;
    n.epsilon = 1e-6;

    CertificateParams p;
    p.lambda = 0.0;
    p.L0 = p.L1 = L[i];
    p.gamma0 = p.gamma1 = gamma[i];
    p.Lbar0 = p.Lbar1 = 0.0;
    p.mu = std::abs(mu[i]);
    p.theta0 = p.theta1 = std::abs(mu[i]);
    p.rho = rho_ratio * rho_bar(0.0, gamma[i]);
    n.cert = p;

    n.W = [](const Vec& e, const Vec& m, int, int b) {
      return b == 0 ? e.norm() : (e + m).norm();
    };
    n.trigger_W = [](const Vec& e) { return e.norm(); };
    const Eigen::RowVector3d Ci = model.C[i];
    n.phi_term = [Ci, i](const Vec& x) {
      const double z = Ci.dot(x.segment(3 * i, 3));
      return z * z;
    };
    s.nets.push_back(std::move(n));
  }

  // e-blocks hold psi_i = Theta_i(eta) - vartheta_i; the held injection is
  // recovered as vartheta_i = Theta_i(eta) - psi_i.
  Vec vartheta0(6);
  for (int k = 0; k < 3; ++k) {
    vartheta0[k] = c.vartheta1_0[k];
    vartheta0[3 + k] = c.vartheta2_0[k];
  }
  s.e0 = Vec(6);
  for (int i = 0; i < 2; ++i)
    s.e0.segment(3 * i, 3) = observer_theta(model, i, s.x0) - vartheta0.segment(3 * i, 3);

  auto vartheta_of = [model](const Vec& x, const Vec& e) {
    Vec v(6);
    for (int i = 0; i < 2; ++i)
      v.segment(3 * i, 3) = observer_theta(model, i, x) - e.segment(3 * i, 3);
    return v;
  };
  s.flow.f = [flow, vartheta_of](double, const Vec&, const Vec& x, const Vec& e, const Vec& w) {
    return flow.F_eta(x, vartheta_of(x, e), w);
  };
  s.flow.g = [flow, vartheta_of](double, const Vec&, const Vec& x, const Vec& e, const Vec& w) {
    const Vec v = vartheta_of(x, e);
    Vec de(6);
    for (int i = 0; i < 2; ++i) de.segment(3 * i, 3) = flow.G_psi(i, x, v, w);
    return de;
  };
  s.V = [](const Vec& x) { return x.squaredNorm(); };
  s.x_names = {"eta11", "eta12", "eta13", "eta21", "eta22", "eta23"};
  s.e_names = {"psi11", "psi12", "psi13", "psi21", "psi22", "psi23"};
  return s;
}

Scenario scenario_by_name(const std::string& name, double rho_ratio) {
  if (name == "robot-arms-rr") return robot_arm_scenario(ProtocolKind::RoundRobin, rho_ratio);
  if (name == "robot-arms-tod")
    return robot_arm_scenario(ProtocolKind::TryOnceDiscard, rho_ratio);
  if (name == "robot-arms-mixed")
    return robot_arm_scenario(ProtocolKind::RoundRobin, ProtocolKind::TryOnceDiscard, rho_ratio);
  if (name == "observers-coupled") return observer_scenario(true, rho_ratio);
  if (name == "observers-decoupled") return observer_scenario(false, rho_ratio);
  throw ConfigViolation("unknown scenario: " + name);
}

}  // namespace etmas
