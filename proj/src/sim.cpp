#include "localcast/sim.hpp"

#include <stdexcept>

#include "localcast/rng.hpp"

namespace localcast {

Slot default_max_slots(const Scenario& s) {
  const auto& c = s.consts();
  const double log_n = c.log_n;
  const double n = static_cast<double>(s.n_bound());
  return static_cast<Slot>(4.0 * c.delta * c.gamma * (n + log_n * log_n) * log_n);
}

bool success_in_slot(const Scenario& s, const Neighborhoods& hoods,
                     NodeIndex x, const SlotOutcome& outcome) {
  const auto& me = s.node(x);
  for (NodeIndex y : hoods.broadcast[x]) {
    const auto& other = s.node(y);
    if (other.wake > me.wake || other.shutdown <= outcome.slot) continue;
    const auto from = outcome.decoded_by(y);
    if (!from || *from != x) return false;
  }
  return true;
}

Trace run(const Scenario& s, const RunOptions& opts) {
  const Neighborhoods hoods(s);
  return run(s, hoods, opts);
}

Trace run(const Scenario& s, const Neighborhoods& hoods, const RunOptions& opts) {
  const Slot max_slots = opts.max_slots > 0 ? opts.max_slots : default_max_slots(s);
  const std::size_t n = s.size();

  std::vector<NodeState> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    states.emplace_back(opts.variant, s.n_bound(), s.consts());

  Trace trace;
  trace.nodes.resize(n);
  for (NodeIndex i = 0; i < n; ++i) {
    trace.nodes[i].id = s.node(i).id;
    trace.nodes[i].n_x = hoods.n_x(i);
    trace.nodes[i].wake = s.node(i).wake;
  }

  std::vector<std::uint8_t> active(n, 0);
  std::vector<std::uint8_t> transmitted(n, 0);
  std::vector<std::uint8_t> decoded(n, 0);
  std::vector<NodeIndex> awake;
  std::vector<NodeIndex> transmitters;
  SlotOutcome outcome;

  Slot t = 0;
  for (; t < max_slots; ++t) {
    bool pending = false;
    awake.clear();
    transmitters.clear();
    for (NodeIndex i = 0; i < n; ++i) {
      const auto& spec = s.node(i);
      active[i] = 0;
      transmitted[i] = 0;
      if (!states[i].halted() && spec.shutdown > t) pending = true;
      if (!spec.awake_at(t)) continue;
      awake.push_back(i);
      if (states[i].halted()) continue;
      active[i] = 1;
      if (states[i].decide_transmit(rng::uniform(opts.seed, spec.id, static_cast<std::uint64_t>(t)))) {
        transmitted[i] = 1;
        transmitters.push_back(i);
      }
    }
    if (!pending) break;

    resolve_slot(s, t, awake, transmitters, outcome);

    for (NodeIndex x : transmitters) {
      auto& rec = trace.nodes[x];
      if (!rec.first_success && success_in_slot(s, hoods, x, outcome))
        rec.first_success = t;
    }

    if (opts.observer) {
      opts.observer->on_slot(SlotView{s, hoods, t, states, active, outcome});
    }

    for (const auto& [rx, tx] : outcome.decodes) decoded[rx] = 1;
    for (NodeIndex i : awake) {
      if (!active[i]) continue;
      SlotFeedback fb;
      fb.decoded = decoded[i] != 0;
      fb.low_power_while_tx = transmitted[i] && outcome.has_low_power(i);
      states[i].observe(fb);
      if (states[i].halted()) {
        trace.nodes[i].halt_slot = t;
        trace.nodes[i].reason = states[i].halt_reason();
      }
    }
    for (const auto& [rx, tx] : outcome.decodes) decoded[rx] = 0;

    if (opts.record_outcomes) {
      SlotOutcome kept;
      kept.slot = t;
      kept.transmitters = outcome.transmitters;
      kept.decodes = outcome.decodes;
      kept.low_power = outcome.low_power;
      trace.outcomes.push_back(std::move(kept));
    }
  }

  trace.slots_run = t;
  if (t == max_slots) {
    for (NodeIndex i = 0; i < n; ++i)
      if (!states[i].halted() && s.node(i).shutdown > t) trace.timed_out = true;
  }
  for (NodeIndex i = 0; i < n; ++i) {
    trace.nodes[i].fallbacks = states[i].fallback_count();
    trace.nodes[i].transmissions = states[i].transmissions();
  }
  return trace;
}

}  // namespace localcast
