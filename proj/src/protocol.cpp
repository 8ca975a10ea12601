#include "etmas/protocol.hpp"

#include <cmath>

namespace etmas {

namespace {

void check_dims(const Vec& e, const NodePartition& part, const char* who) {
  if (part.node_count() < 1) throw DimensionMismatch(std::string(who) + ": empty partition");
  if (part.total_dim() != e.size())
    throw DimensionMismatch(std::string(who) + ": partition does not cover the error vector");
}

}  // namespace

int rr_granted_node(int kappa, int node_count) {
  if (node_count < 1) throw DimensionMismatch("rr_granted_node: empty partition");
  // kappa = l + j*node_count with l in {1, ..., node_count} grants node l-1.
  int r = (kappa - 1) % node_count;
  if (r < 0) r += node_count;
  return r;
}

int tod_granted_node(const Vec& e, const NodePartition& part) {
  check_dims(e, part, "tod_granted_node");
  int best = 0, off = 0;
  double best_norm = -1.0;
  for (int l = 0; l < part.node_count(); ++l) {
    const double n = e.segment(off, part.sizes[l]).norm();
    if (n > best_norm) {  // strict: ties keep the smaller index
      best_norm = n;
      best = l;
    }
    off += part.sizes[l];
  }
  return best;
}

namespace {

Vec zero_block(const Vec& e, const NodePartition& part, int node) {
  Vec out = e;
  int off = 0;
  for (int l = 0; l < node; ++l) off += part.sizes[l];
  out.segment(off, part.sizes[node]).setZero();
  return out;
}

}  // namespace

Vec rr_update(int kappa, const Vec& e, const NodePartition& part) {
  check_dims(e, part, "rr_update");
  return zero_block(e, part, rr_granted_node(kappa, part.node_count()));
}

Vec tod_update(const Vec& e, const NodePartition& part) {
  check_dims(e, part, "tod_update");
  return zero_block(e, part, tod_granted_node(e, part));
}

double contraction_factor(ProtocolKind, const NodePartition& part) {
  const double l = part.node_count();
  if (l < 1.0) throw DimensionMismatch("contraction_factor: empty partition");
  return std::sqrt((l - 1.0) / l);
}

double rr_storage(int kappa, const Vec& e, const NodePartition& part) {
  check_dims(e, part, "rr_storage");
  const int l_count = part.node_count();
  const int g = rr_granted_node(kappa, l_count);
  double acc = 0.0;
  int off = 0;
  for (int l = 0; l < l_count; ++l) {
    const int weight = ((l - g) % l_count + l_count) % l_count + 1;
    acc += weight * e.segment(off, part.sizes[l]).squaredNorm();
    off += part.sizes[l];
  }
  return std::sqrt(acc);
}

}  // namespace etmas
