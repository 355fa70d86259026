#include "localcast/node.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace localcast {

std::string_view to_string(Variant v) {
  return v == Variant::Alg1 ? "alg1" : "alg2";
}

std::string_view to_string(HaltReason r) {
  switch (r) {
    case HaltReason::Budget:
      return "budget";
    case HaltReason::LowPowerSuccess:
      return "low_power_success";
    case HaltReason::None:
      break;
  }
  return "none";
}

Variant parse_variant(std::string_view s) {
  if (s == "alg1") return Variant::Alg1;
  if (s == "alg2") return Variant::Alg2;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "'");
}

HaltReason parse_halt_reason(std::string_view s) {
  if (s == "budget") return HaltReason::Budget;
  if (s == "low_power_success") return HaltReason::LowPowerSuccess;
  if (s == "none" || s.empty()) return HaltReason::None;
  throw std::invalid_argument("unknown halt reason '" + std::string(s) + "'");
}

NodeState::NodeState(Variant variant, std::uint64_t n_bound,
                     const AlgoConsts& consts)
    : variant_(variant),
      p_floor_(1.0 / (128.0 * static_cast<double>(n_bound))),
      budget_(consts.gamma * consts.log_n),
      log_n_(consts.log_n),
      inner_len_(consts.delta * consts.log_n),
      p_(initial_probability(n_bound)) {
  if (n_bound < 1) throw std::invalid_argument("n_bound must be >= 1");
  enter_outer_loop();
}

void NodeState::enter_outer_loop() {
  p_ = std::max(p_floor_, p_ / 32.0);
  rc_ = 0;
  p_ = std::min(1.0 / 16.0, 2.0 * p_);
  inner_j_ = 0;
}

bool NodeState::decide_transmit(double u) {
  if (halted_) throw std::logic_error("decide_transmit on a halted node");
  const bool transmit = u < p_;
  tp_ += p_;
  ++slots_active_;
  if (transmit) ++transmissions_;
  if (tp_ > budget_) {
    halted_ = true;
    halted_this_slot_ = true;
    reason_ = HaltReason::Budget;
  }
  pending_feedback_ = true;
  return transmit;
}

void NodeState::observe(const SlotFeedback& fb) {
  if (!pending_feedback_)
    throw std::logic_error("observe without a preceding decide_transmit");
  pending_feedback_ = false;
  if (halted_ && !halted_this_slot_)
    throw std::logic_error("observe on a halted node");

  if (variant_ == Variant::Alg2 && fb.low_power_while_tx) {
    halted_ = true;
    halted_this_slot_ = false;
    reason_ = HaltReason::LowPowerSuccess;
    return;
  }
  if (halted_this_slot_) {
    halted_this_slot_ = false;
    return;
  }

  if (fb.decoded && ++rc_ > log_n_) {
    ++fallbacks_;
    enter_outer_loop();
    return;
  }
  if (++inner_j_ == inner_len_) {
    inner_j_ = 0;
    p_ = std::min(1.0 / 16.0, 2.0 * p_);
  }
}

}  // namespace localcast
