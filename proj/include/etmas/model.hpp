#pragma once
// Plant/controller/reference bundles and the composed error-coordinate flow
// maps assembled from them.

#include <functional>

#include "etmas/types.hpp"

namespace etmas {

// Callable bundle describing one tracking scenario's physical side.  All maps
// operate on the stacked (all-agents) vectors; physical coupling is internal
// to f_p and recorded in the adjacency matrices for validation.
struct PlantModel {
  int n_p = 0;   // stacked agent-state dimension (plant and reference alike)
  int n_ct = 0;  // controller state dimension (0 for a static controller)
  int n_y = 0;   // stacked measured-output dimension
  int n_u = 0;   // stacked controller-output dimension
  int n_w = 0;   // disturbance dimension

  // Agent dynamics, shared by plant and reference (the reference runs the
  // same vector field under the feedforward input only).
  std::function<Vec(const Vec& x, const Vec& u, const Vec& w, double t)> f_p;
  // Measured output map (identical structure for plant and reference side).
  std::function<Vec(const Vec& x)> g_p;
  // Controller output from its state and the held measurements.
  std::function<Vec(const Vec& x_ct, const Vec& yhat_p, const Vec& yhat_rf, double t)> g_c;
  // Controller state dynamics (unused when n_ct = 0).
  std::function<Vec(const Vec& x_ct, const Vec& yhat_p, const Vec& yhat_rf, double t)> f_c;
  // Feedforward signal and (optionally) its time derivative.
  std::function<Vec(double delta)> u_f;
  std::function<Vec(double delta)> du_f;
  // Optional analytic Jacobian of g_p; finite differences otherwise.
  std::function<Eigen::MatrixXd(const Vec& x)> g_p_jac;

  Eigen::MatrixXi adj_p, adj_rf;  // physical coupling graphs
};

// Rejects adjacency matrices that are not symmetric 0/1 with a zero diagonal,
// or whose graph is disconnected.
void validate_adjacency(const Eigen::MatrixXi& adj, const std::string& which);

// The error-coordinate flow maps.  Arguments: feedforward clock t (the delta
// clock value), tracking error eta and reference state x_rf (dim n_p each),
// controller state x_ct, output-side errors e_eta/e_rf (dim n_y), input-side
// errors e_ct/e_f (dim n_u), and the plant/reference disturbance samples.
using ComposedMap = std::function<Vec(double t, const Vec& eta, const Vec& x_rf,
                                      const Vec& x_ct, const Vec& e_eta, const Vec& e_ct,
                                      const Vec& e_rf, const Vec& e_f, const Vec& w_p,
                                      const Vec& w_rf)>;

struct ComposedFlow {
  ComposedMap F_eta;  // tracking-error dynamics
  ComposedMap F_rf;   // reference dynamics
  ComposedMap F_ct;   // controller-state dynamics
  ComposedMap G_ax;   // stacked (e_eta, e_ct) dynamics, dim n_y + n_u
  ComposedMap G_rf;   // reference-output error dynamics, dim n_y
  ComposedMap G_f;    // feedforward error dynamics, dim n_u
};

// Assembles the composed maps by direct substitution.  Output-map derivatives
// use the analytic Jacobian when `analytic` is set (MissingJacobian if the
// model carries none) and central finite differences with step 1e-6 otherwise.
ComposedFlow compose_tracking_flow(const PlantModel& model, bool analytic = false);

// ---------------------------------------------------------------------------
// Distributed observers for a single LTI leader (two followers).

struct ObserverModel {
  enum class Variant { Decoupled, Coupled };
  Variant variant = Variant::Coupled;

  Eigen::MatrixXd A;  // leader dynamics, n x n
  Eigen::MatrixXd B;  // disturbance input matrix
  std::vector<Eigen::RowVectorXd> C;      // per-observer output rows
  std::vector<Vec> J;                     // own-innovation gains
  std::vector<Vec> J_cross;               // neighbor-innovation gains (Coupled)
  std::vector<double> chi;                // consensus gains (Coupled)

  int n() const { return static_cast<int>(A.rows()); }
  int num_obs() const { return static_cast<int>(C.size()); }
};

// Innovation map Theta_i evaluated on the stacked estimation errors
// eta = (eta_1, ..., eta_N); the Decoupled variant drops the cross terms.
Vec observer_theta(const ObserverModel& model, int i, const Vec& eta);

struct ObserverFlow {
  // d/dt of the stacked eta given eta, the held injections vartheta, and w.
  std::function<Vec(const Vec& eta, const Vec& vartheta, const Vec& w)> F_eta;
  // d/dt of psi_i = Theta_i(eta) - vartheta_i along the flow (vartheta flat).
  std::function<Vec(int i, const Vec& eta, const Vec& vartheta, const Vec& w)> G_psi;
};

ObserverFlow compose_observer_flow(const ObserverModel& model);

}  // namespace etmas
