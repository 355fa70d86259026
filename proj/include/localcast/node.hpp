#pragma once

#include <cstdint>
#include <string_view>

#include "localcast/geometry.hpp"

namespace localcast {

enum class Variant { Alg1, Alg2 };
enum class HaltReason { None, Budget, LowPowerSuccess };

std::string_view to_string(Variant v);
std::string_view to_string(HaltReason r);
Variant parse_variant(std::string_view s);
HaltReason parse_halt_reason(std::string_view s);

struct SlotFeedback {
  bool decoded = false;
  /// Alg2 only: LowPower held at this node while it transmitted.
  bool low_power_while_tx = false;
};

/// One node running the randomized local-broadcast automaton, flattened
/// into a per-slot step: decide_transmit() then observe().
///
/// The outer-loop prologue (clamp to max{1/(128n), p/32}, reset rc) is
/// always followed by one doubling min{1/16, 2p} before the first inner
/// slot, both at start-up and after every FallBack. transmit_probability()
/// is the value used by the next draw.
class NodeState {
 public:
  NodeState(Variant variant, std::uint64_t n_bound, const AlgoConsts& consts);

  /// The stored probability before the first prologue: 1/(4n).
  static double initial_probability(std::uint64_t n_bound) {
    return 1.0 / (4.0 * static_cast<double>(n_bound));
  }
  double floor_probability() const noexcept { return p_floor_; }

  /// Bernoulli(p) against `u` in [0,1), then tp += p and the budget test.
  /// Throws std::logic_error on a halted node.
  bool decide_transmit(double u);

  /// Feedback for the slot of the last decide_transmit(). Legal on a node
  /// that halted on budget within that same slot (only the Alg2 LowPower
  /// precedence applies then); throws on a node halted earlier.
  void observe(const SlotFeedback& fb);

  Variant variant() const noexcept { return variant_; }
  double transmit_probability() const noexcept { return p_; }
  double tp() const noexcept { return tp_; }
  int rc() const noexcept { return rc_; }
  int inner_j() const noexcept { return inner_j_; }
  int inner_length() const noexcept { return inner_len_; }
  bool halted() const noexcept { return halted_; }
  HaltReason halt_reason() const noexcept { return reason_; }
  int fallback_count() const noexcept { return fallbacks_; }
  std::int64_t slots_active() const noexcept { return slots_active_; }
  std::int64_t transmissions() const noexcept { return transmissions_; }
  double budget() const noexcept { return budget_; }
  int log_n() const noexcept { return log_n_; }

  /// Test hook: overwrite the accumulated probability.
  void set_tp_for_testing(double tp) { tp_ = tp; }
  /// Test hook: overwrite p (no clamping).
  void set_p_for_testing(double p) { p_ = p; }

 private:
  void enter_outer_loop();

  Variant variant_;
  double p_floor_;
  double budget_;
  int log_n_;
  int inner_len_;

  double p_;
  double tp_ = 0.0;
  int rc_ = 0;
  int inner_j_ = 0;
  bool halted_ = false;
  bool halted_this_slot_ = false;
  bool pending_feedback_ = false;
  HaltReason reason_ = HaltReason::None;
  int fallbacks_ = 0;
  std::int64_t slots_active_ = 0;
  std::int64_t transmissions_ = 0;
};

}  // namespace localcast
