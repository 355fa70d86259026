#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "localcast/analysis.hpp"
#include "localcast/geometry.hpp"
#include "localcast/lowerbound.hpp"
#include "localcast/sim.hpp"

namespace localcast::io {

/// Shortest round-trip decimal form, '.' separator, locale independent.
std::string format_double(double v);
double parse_double(const std::string& s);

// Scenario JSON:
// {"phys": {"alpha","beta","noise","phi"}, "model": "sinr" |
//  {"protocol": {"r_t","r_i"}}, "n_bound", "consts": {"delta","gamma"},
//  "nodes": [{"id","x","y","wake","shutdown"}], "generator"?: {"kind","seed"}}
// "shutdown": null means never.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
Scenario read_scenario(const std::string& path);
void write_scenario(const std::string& path, const Scenario& s);

/// One slot record per simulated slot, then one summary record per node.
/// Node references are scenario ids.
void write_trace_jsonl(std::ostream& os, const Scenario& s, const Trace& trace);
/// Inverse of write_trace_jsonl (rx_power is not part of the format).
Trace read_trace_jsonl(std::istream& is, const Scenario& s);

/// node_id,n,N_x,wake,halt,first_success,reason,fallbacks,seed,variant,transmissions
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& is);

/// t,p_t,range_i,exact_cond_prob,bound,holds,cumulative_exact,cumulative_bound
void write_bound_csv(std::ostream& os, const std::vector<lowerbound::BoundRow>& rows);
std::vector<lowerbound::BoundRow> read_bound_csv(std::istream& is);

/// {"form","a","b","residual","cells":[{"n","N_x","median","count"}]}
std::string fit_to_json(const FitResult& fit);
FitResult fit_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a, for comparing emitted files.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace localcast::io
