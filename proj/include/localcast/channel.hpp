#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "localcast/geometry.hpp"

namespace localcast {

/// Everything the channel decided in one slot. Node references are
/// scenario indices.
struct SlotOutcome {
  Slot slot = 0;
  std::vector<NodeIndex> transmitters;                     // ascending
  std::vector<std::pair<NodeIndex, NodeIndex>> decodes;    // (receiver, sender), by receiver
  std::vector<std::pair<NodeIndex, double>> rx_power;      // awake nodes, own signal excluded
  std::vector<NodeIndex> low_power;                        // ascending

  /// Sender decoded by `receiver`, if any.
  std::optional<NodeIndex> decoded_by(NodeIndex receiver) const;
  bool is_transmitter(NodeIndex i) const;
  bool has_low_power(NodeIndex i) const;
};

/// Signal power delivered over distance d given d^2, i.e. d^-alpha.
double path_gain(double squared_dist, double alpha) noexcept;

/// Sum of 1/d(w, receiver)^alpha over transmitters w != receiver.
/// Throws std::domain_error if some transmitter is co-located with the
/// receiver.
double received_power(const Scenario& s, NodeIndex receiver,
                      std::span<const NodeIndex> transmitters);

/// SINR decode test. Requires sender in transmitters and receiver not.
bool sinr_decodes(const Scenario& s, NodeIndex receiver, NodeIndex sender,
                  std::span<const NodeIndex> transmitters);

/// (4 (beta + 4) r_b)^(-alpha).
double lp_threshold(const PhysParams& phys);

bool low_power(const Scenario& s, NodeIndex x,
               std::span<const NodeIndex> transmitters);

/// Unit-disk decode: sender within r_t and every other transmitter
/// strictly beyond r_i of the receiver.
bool protocol_decodes(const Scenario& s, NodeIndex receiver, NodeIndex sender,
                      std::span<const NodeIndex> transmitters, double r_t,
                      double r_i);

/// Resolve one slot for the awake nodes given the transmitter set: power,
/// LowPower flags and decodes under the scenario's interference model.
/// Parallel over receivers; `transmitters` must be sorted.
void resolve_slot(const Scenario& s, Slot t, std::span<const NodeIndex> awake,
                  std::span<const NodeIndex> transmitters, SlotOutcome& out);

namespace reference {

/// Serial per-pair evaluation of the same slot through the public
/// predicates above. Kept for testing the kernel.
SlotOutcome resolve_slot(const Scenario& s, Slot t,
                         std::span<const NodeIndex> awake,
                         std::span<const NodeIndex> transmitters);

}  // namespace reference

}  // namespace localcast
