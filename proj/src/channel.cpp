#include "localcast/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace localcast {

namespace {

constexpr NodeIndex kNone = std::numeric_limits<NodeIndex>::max();

bool contains(std::span<const NodeIndex> sorted, NodeIndex i) {
  return std::binary_search(sorted.begin(), sorted.end(), i);
}

double gain_between(const Scenario& s, NodeIndex a, NodeIndex b) {
  return path_gain(squared_distance(s.node(a).pos, s.node(b).pos),
                   s.phys().alpha());
}

}  // namespace

std::optional<NodeIndex> SlotOutcome::decoded_by(NodeIndex receiver) const {
  auto it = std::lower_bound(
      decodes.begin(), decodes.end(), receiver,
      [](const auto& d, NodeIndex r) { return d.first < r; });
  if (it == decodes.end() || it->first != receiver) return std::nullopt;
  return it->second;
}

bool SlotOutcome::is_transmitter(NodeIndex i) const {
  return contains(transmitters, i);
}

bool SlotOutcome::has_low_power(NodeIndex i) const {
  return contains(low_power, i);
}

double path_gain(double squared_dist, double alpha) noexcept {
  if (alpha == 3.0) return 1.0 / (squared_dist * std::sqrt(squared_dist));
  if (alpha == 4.0) return 1.0 / (squared_dist * squared_dist);
  return std::pow(squared_dist, -0.5 * alpha);
}

double received_power(const Scenario& s, NodeIndex receiver,
                      std::span<const NodeIndex> transmitters) {
  double total = 0.0;
  for (NodeIndex w : transmitters) {
    if (w == receiver) continue;
    const double d2 = squared_distance(s.node(w).pos, s.node(receiver).pos);
    if (d2 == 0.0)
      throw std::domain_error("transmitter co-located with receiver");
    total += path_gain(d2, s.phys().alpha());
  }
  return total;
}

bool sinr_decodes(const Scenario& s, NodeIndex receiver, NodeIndex sender,
                  std::span<const NodeIndex> transmitters) {
  if (std::find(transmitters.begin(), transmitters.end(), sender) == transmitters.end())
    throw std::invalid_argument("sender is not transmitting");
  if (std::find(transmitters.begin(), transmitters.end(), receiver) != transmitters.end())
    throw std::invalid_argument("a transmitter cannot decode");
  const double d2 = squared_distance(s.node(sender).pos, s.node(receiver).pos);
  if (d2 == 0.0) throw std::domain_error("sender co-located with receiver");
  const double signal = path_gain(d2, s.phys().alpha());
  double interference = 0.0;
  for (NodeIndex w : transmitters) {
    if (w == sender || w == receiver) continue;
    interference += gain_between(s, w, receiver);
  }
  return signal / (s.phys().noise() + interference) >= s.phys().beta();
}

double lp_threshold(const PhysParams& phys) {
  return std::pow(4.0 * (phys.beta() + 4.0) * phys.r_b(), -phys.alpha());
}

bool low_power(const Scenario& s, NodeIndex x,
               std::span<const NodeIndex> transmitters) {
  return received_power(s, x, transmitters) <= lp_threshold(s.phys());
}

bool protocol_decodes(const Scenario& s, NodeIndex receiver, NodeIndex sender,
                      std::span<const NodeIndex> transmitters, double r_t,
                      double r_i) {
  const Point v = s.node(receiver).pos;
  if (distance(s.node(sender).pos, v) > r_t) return false;
  for (NodeIndex z : transmitters) {
    if (z == sender || z == receiver) continue;
    if (distance(s.node(z).pos, v) <= r_i) return false;
  }
  return true;
}

void resolve_slot(const Scenario& s, Slot t, std::span<const NodeIndex> awake,
                  std::span<const NodeIndex> transmitters, SlotOutcome& out) {
  const std::size_t m = awake.size();
  const double alpha = s.phys().alpha();
  const double beta = s.phys().beta();
  const double noise = s.phys().noise();
  const double threshold = lp_threshold(s.phys());
  const bool protocol = s.model().kind == InterferenceModel::Kind::Protocol;
  const double r_t = s.model().r_t;
  const double r_i = s.model().r_i;

  std::vector<double> power(m, 0.0);
  std::vector<NodeIndex> sender(m, kNone);

  const auto count = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static) if (m * transmitters.size() > 8192)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const NodeIndex v = awake[k];
    const Point pv = s.node(v).pos;
    double total = 0.0;
    double best = -1.0;
    NodeIndex strongest = kNone;
    for (NodeIndex w : transmitters) {
      if (w == v) continue;
      const double g = path_gain(squared_distance(s.node(w).pos, pv), alpha);
      total += g;
      if (g > best) {
        best = g;
        strongest = w;
      }
    }
    power[k] = total;
    if (strongest == kNone || contains(transmitters, v)) continue;

    if (protocol) {
      NodeIndex near = kNone;
      int interferers = 0;
      for (NodeIndex w : transmitters) {
        const double d = distance(s.node(w).pos, pv);
        if (d <= r_i) ++interferers;
        if (d <= r_t) near = w;
      }
      if (interferers == 1 && near != kNone) sender[k] = near;
    } else {
      // Summed in transmitter order so the result matches sinr_decodes bit for bit.
      double interference = 0.0;
      for (NodeIndex w : transmitters) {
        if (w == strongest) continue;
        interference += path_gain(squared_distance(s.node(w).pos, pv), alpha);
      }
      if (best / (noise + interference) >= beta) sender[k] = strongest;
    }
  }

  out.slot = t;
  out.transmitters.assign(transmitters.begin(), transmitters.end());
  out.decodes.clear();
  out.rx_power.clear();
  out.low_power.clear();
  out.rx_power.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.rx_power.emplace_back(awake[k], power[k]);
    if (power[k] <= threshold) out.low_power.push_back(awake[k]);
    if (sender[k] != kNone) out.decodes.emplace_back(awake[k], sender[k]);
  }
  std::sort(out.rx_power.begin(), out.rx_power.end());
  std::sort(out.low_power.begin(), out.low_power.end());
  std::sort(out.decodes.begin(), out.decodes.end());
}

namespace reference {

SlotOutcome resolve_slot(const Scenario& s, Slot t,
                         std::span<const NodeIndex> awake,
                         std::span<const NodeIndex> transmitters) {
  SlotOutcome out;
  out.slot = t;
  out.transmitters.assign(transmitters.begin(), transmitters.end());
  const bool protocol = s.model().kind == InterferenceModel::Kind::Protocol;
  for (NodeIndex v : awake) {
    out.rx_power.emplace_back(v, received_power(s, v, transmitters));
    if (low_power(s, v, transmitters)) out.low_power.push_back(v);
    if (contains(transmitters, v)) continue;
    for (NodeIndex u : transmitters) {
      const bool ok = protocol ? protocol_decodes(s, v, u, transmitters,
                                                  s.model().r_t, s.model().r_i)
                               : sinr_decodes(s, v, u, transmitters);
      if (ok) out.decodes.emplace_back(v, u);
    }
  }
  std::sort(out.rx_power.begin(), out.rx_power.end());
  std::sort(out.low_power.begin(), out.low_power.end());
  std::sort(out.decodes.begin(), out.decodes.end());
  return out;
}

}  // namespace reference

}  // namespace localcast
