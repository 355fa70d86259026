#include "localcast/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "localcast/channel.hpp"
#include "localcast/lowerbound.hpp"
#include "localcast/trials.hpp"

namespace localcast::verify {

void LowPowerDeliveryCheck::on_slot(const SlotView& v) {
  if (v.scenario.model().kind != InterferenceModel::Kind::Sinr) return;
  const auto& out = v.outcome;
  for (NodeIndex x : out.transmitters) {
    if (!out.has_low_power(x)) continue;
    ++low_power_transmissions;
    for (NodeIndex y : v.hoods.double_broadcast[x]) {
      if (out.is_transmitter(y)) continue;
      ++checks;
      if (!sinr_decodes(v.scenario, y, x, out.transmitters)) ++violations;
      if (v.scenario.node(y).awake_at(v.t)) {
        const auto got = out.decoded_by(y);
        if (!got || *got != x) ++kernel_mismatches;
      }
    }
  }
}

void ProbabilityMassCheck::on_slot(const SlotView& v) {
  const std::size_t n = v.scenario.size();
  if (last_p_.size() != n) {
    last_p_.assign(n, 0.0);
    mass_.assign(n, 0.0);
  }
  ++slots;
  auto exact_mass = [&](NodeIndex x) {
    double m = v.active[x] ? v.states[x].transmit_probability() : 0.0;
    for (NodeIndex y : v.hoods.broadcast[x])
      if (v.active[y]) m += v.states[y].transmit_probability();
    return m;
  };

  bool suspicious = false;
  for (NodeIndex y = 0; y < n; ++y) {
    const double cur = v.active[y] ? v.states[y].transmit_probability() : 0.0;
    const double diff = cur - last_p_[y];
    if (diff == 0.0) continue;
    last_p_[y] = cur;
    mass_[y] += diff;
    if (mass_[y] > 0.5 - 1e-9) suspicious = true;
    max_mass = std::max(max_mass, mass_[y]);
    for (NodeIndex x : v.hoods.broadcast[y]) {
      mass_[x] += diff;
      max_mass = std::max(max_mass, mass_[x]);
      if (mass_[x] > 0.5 - 1e-9) suspicious = true;
    }
  }
  if (!suspicious) return;
  // Resync from scratch and count a violation if any exact mass exceeds 1/2.
  bool violated = false;
  for (NodeIndex x = 0; x < n; ++x) {
    mass_[x] = exact_mass(x);
    if (mass_[x] > 0.5) violated = true;
  }
  if (violated) ++violations;
}

void DisjointnessCheck::on_slot(const SlotView& v) {
  const auto& out = v.outcome;
  std::vector<NodeIndex> lp_tx;
  for (NodeIndex x : out.transmitters)
    if (out.has_low_power(x)) lp_tx.push_back(x);
  const double rb = v.scenario.broadcast_radius();
  for (std::size_t a = 0; a < lp_tx.size(); ++a)
    for (std::size_t b = a + 1; b < lp_tx.size(); ++b) {
      ++pairs_checked;
      const Point pa = v.scenario.node(lp_tx[a]).pos;
      const Point pb = v.scenario.node(lp_tx[b]).pos;
      if (distance(pa, pb) > 2.0 * rb) continue;
      for (const auto& node : v.scenario.nodes())
        if (distance(node.pos, pa) <= rb && distance(node.pos, pb) <= rb) {
          ++violations;
          break;
        }
    }
}

void CorpusStats::merge(const CorpusStats& o) {
  trials += o.trials;
  slots += o.slots;
  timeouts += o.timeouts;
  lp_transmissions += o.lp_transmissions;
  delivery_checks += o.delivery_checks;
  delivery_violations += o.delivery_violations;
  kernel_mismatches += o.kernel_mismatches;
  mass_violations += o.mass_violations;
  max_mass = std::max(max_mass, o.max_mass);
  disjoint_pairs += o.disjoint_pairs;
  disjoint_violations += o.disjoint_violations;
  rows.insert(rows.end(), o.rows.begin(), o.rows.end());
}

namespace {

CorpusStats run_job(const CorpusJob& job, ScanFlags flags) {
  const Scenario s = generate_scenario(job.gen);
  const Neighborhoods hoods(s);
  LowPowerDeliveryCheck lp;
  ProbabilityMassCheck mass;
  DisjointnessCheck disjoint;
  ObserverList observers;
  if (flags.delivery) observers.add(&lp);
  if (flags.mass) observers.add(&mass);
  if (flags.disjoint) observers.add(&disjoint);

  RunOptions opts;
  opts.variant = job.variant;
  opts.seed = job.seed;
  opts.max_slots = job.max_slots;
  opts.record_outcomes = false;
  opts.observer = &observers;
  const Trace trace = run(s, hoods, opts);

  CorpusStats st;
  st.trials = 1;
  st.slots = static_cast<std::uint64_t>(trace.slots_run);
  st.timeouts = trace.timed_out ? 1 : 0;
  st.lp_transmissions = lp.low_power_transmissions;
  st.delivery_checks = lp.checks;
  st.delivery_violations = lp.violations;
  st.kernel_mismatches = lp.kernel_mismatches;
  st.mass_violations = mass.violations;
  st.max_mass = mass.max_mass;
  st.disjoint_pairs = disjoint.pairs_checked;
  st.disjoint_violations = disjoint.violations;
  st.rows = summarize(trace, s.n_bound(), job.seed, job.variant);
  return st;
}

CorpusStats merge_all(const std::vector<CorpusStats>& parts) {
  CorpusStats total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace

CorpusStats scan_corpus(std::span<const CorpusJob> jobs, ScanFlags flags) {
  return merge_all(run_trials<CorpusStats>(
      jobs.size(), [&](std::size_t i) { return run_job(jobs[i], flags); }));
}

namespace serial {
CorpusStats scan_corpus(std::span<const CorpusJob> jobs, ScanFlags flags) {
  return merge_all(localcast::serial::run_trials<CorpusStats>(
      jobs.size(), [&](std::size_t i) { return run_job(jobs[i], flags); }));
}
}  // namespace serial

std::uint64_t calculus_claim_violations(std::size_t grid_points) {
  const double hi = 2.0 / std::numbers::e;
  std::uint64_t bad = 0;
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double x = grid_points == 1 ? 0.0 : hi * static_cast<double>(k) / static_cast<double>(grid_points - 1);
    if (1.0 - x < std::pow(16.0, -x)) ++bad;
  }
  return bad;
}

std::uint64_t single_tx_peak_violations(std::span<const std::uint64_t> ms) {
  const double cap = 2.0 / std::numbers::e;
  std::uint64_t bad = 0;
  for (std::uint64_t m : ms)
    if (lowerbound::exact_single_tx_prob(m, 1.0 / static_cast<double>(m)) > cap) ++bad;
  return bad;
}

std::vector<std::uint64_t> log_spaced(std::uint64_t lo, std::uint64_t hi,
                                      std::size_t count) {
  std::vector<std::uint64_t> out{lo};
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double v = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
    out.push_back(static_cast<std::uint64_t>(std::llround(v)));
  }
  out.push_back(hi);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TransmissionCheck transmission_counts(std::span<const SummaryRow> rows, double gamma) {
  TransmissionCheck c;
  for (const auto& row : rows) {
    if (row.reason != HaltReason::Budget) continue;
    ++c.budget_halts;
    const double g = gamma * ceil_log2(row.n);
    const double k = static_cast<double>(row.transmissions);
    if (k < g / 2.0 - 3.0 * std::sqrt(g) || k > 2.0 * g) ++c.outside_wide;
    if (k < g / 2.0 || k > 2.0 * g) ++c.outside_strict;
  }
  return c;
}

}  // namespace localcast::verify
