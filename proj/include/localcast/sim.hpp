#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "localcast/channel.hpp"
#include "localcast/geometry.hpp"
#include "localcast/node.hpp"

namespace localcast {

struct NodeRecord {
  NodeId id = 0;
  std::size_t n_x = 0;
  Slot wake = 0;
  std::optional<Slot> first_success;
  std::optional<Slot> halt_slot;
  HaltReason reason = HaltReason::None;
  int fallbacks = 0;
  std::int64_t transmissions = 0;

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct Trace {
  std::vector<SlotOutcome> outcomes;  // rx_power is not retained here
  std::vector<NodeRecord> nodes;      // scenario order
  Slot slots_run = 0;
  bool timed_out = false;
};

/// Read-only view handed to observers once per slot, after the channel is
/// resolved and before feedback is applied. `active` flags nodes that were
/// awake and unhalted at the start of the slot; their
/// transmit_probability() is the value used for this slot's draw.
struct SlotView {
  const Scenario& scenario;
  const Neighborhoods& hoods;
  Slot t;
  std::span<const NodeState> states;
  std::span<const std::uint8_t> active;
  const SlotOutcome& outcome;
};

class SlotObserver {
 public:
  virtual ~SlotObserver() = default;
  virtual void on_slot(const SlotView& view) = 0;
};

struct RunOptions {
  Variant variant = Variant::Alg1;
  std::uint64_t seed = 0;
  Slot max_slots = 0;  // 0 selects default_max_slots()
  bool record_outcomes = true;
  SlotObserver* observer = nullptr;
};

/// Slot cap used when none is given:
/// 4 * delta * gamma * (n_bound + log_n^2) * log_n.
Slot default_max_slots(const Scenario& s);

/// True iff every eligible receiver of x at this slot decoded x.
bool success_in_slot(const Scenario& s, const Neighborhoods& hoods,
                     NodeIndex x, const SlotOutcome& outcome);

Trace run(const Scenario& s, const RunOptions& opts);

/// Same, reusing precomputed neighborhoods.
Trace run(const Scenario& s, const Neighborhoods& hoods, const RunOptions& opts);

}  // namespace localcast
