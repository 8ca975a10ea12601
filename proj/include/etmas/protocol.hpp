#pragma once
// Time-scheduling protocol update functions h(kappa, e) over a node partition
// of one network's error vector, plus the matching storage functions.

#include "etmas/types.hpp"

namespace etmas {

enum class ProtocolKind { RoundRobin, TryOnceDiscard };

// Node partition: block sizes summing to the error-vector dimension.
struct NodePartition {
  std::vector<int> sizes;

  int node_count() const { return static_cast<int>(sizes.size()); }
  int total_dim() const {
    int n = 0;
    for (int s : sizes) n += s;
    return n;
  }
};

// Index (0-based) of the node granted by Round-Robin at counter value kappa.
// kappa counts successful transmissions starting from 1, so kappa = 1 grants
// node 0, kappa = 2 grants node 1, and so on cyclically.
int rr_granted_node(int kappa, int node_count);

// Index (0-based) of the node granted by Try-Once-Discard: largest block
// Euclidean norm, ties broken by minimum index.
int tod_granted_node(const Vec& e, const NodePartition& part);

// h(kappa, e) for Round-Robin: the granted node's block is zeroed, every
// other block passes through unchanged.
Vec rr_update(int kappa, const Vec& e, const NodePartition& part);

// h(e) for Try-Once-Discard.
Vec tod_update(const Vec& e, const NodePartition& part);

// Protocol contraction constant: sqrt((l-1)/l) for l nodes (both kinds).
double contraction_factor(ProtocolKind kind, const NodePartition& part);

// Periodic Round-Robin storage W(kappa, e) = sqrt(sum_l n_l(kappa) |e_l|^2),
// where the node granted at kappa carries weight 1 and the node waiting
// longest for its grant carries weight l.  Satisfies W(kappa+1, h(kappa, e)) <= lambda W(kappa, e)
// with lambda = sqrt((l-1)/l), and |e| <= W <= sqrt(l) |e|.
double rr_storage(int kappa, const Vec& e, const NodePartition& part);

}  // namespace etmas
