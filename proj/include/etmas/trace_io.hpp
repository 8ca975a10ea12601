#pragma once
// Trace export: CSV, JSON Lines, and the run summary document.
//
// CSV column order (fixed): t, j, net, event, <x components by declared
// name>, <e components by declared name>, |eta|, |e_ax|, Gamma_net1..N, U.
// Doubles are printed with %.17g so a round-trip is bit-exact.

#include <string>

#include "etmas/sim.hpp"

namespace etmas {

std::string trace_to_csv(const Trace& trace);

// One JSON object per row, carrying the full snapshot (including m, tau,
// kappa, b, which the CSV omits).
std::string trace_to_jsonl(const Trace& trace);

// Summary document: per-network event counts plus the final hybrid time and
// error norms.  Returned as a serialized JSON object.
std::string summary_json(const Trace& trace);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace etmas
