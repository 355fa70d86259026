#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "localcast/verify.hpp"

using namespace localcast;

namespace {

// Replays a run and recomputes every region mass from scratch each slot.
class BruteMass final : public SlotObserver {
 public:
  void on_slot(const SlotView& v) override {
    for (NodeIndex x = 0; x < v.scenario.size(); ++x) {
      double m = v.active[x] ? v.states[x].transmit_probability() : 0.0;
      for (NodeIndex y = 0; y < v.scenario.size(); ++y)
        if (y != x && v.active[y] &&
            distance(v.scenario.node(x).pos, v.scenario.node(y).pos) <= v.scenario.broadcast_radius())
          m += v.states[y].transmit_probability();
      max_mass = std::max(max_mass, m);
      if (m > 0.5) ++over;
    }
  }
  double max_mass = 0.0;
  std::uint64_t over = 0;
};

}  // namespace

TEST_CASE("incremental mass tracking agrees with brute force") {
  GenSpec g;
  g.kind = LayoutKind::Clustered;
  g.n = 60;
  g.cluster_size = 20;
  g.seed = 3;
  g.wake = WakeKind::Staggered;
  g.wake_rate = 0.05;
  const Scenario s = generate_scenario(g);
  const Neighborhoods h(s);
  verify::ProbabilityMassCheck fast;
  BruteMass slow;
  verify::ObserverList both;
  both.add(&fast);
  both.add(&slow);
  RunOptions o;
  o.seed = 4;
  o.record_outcomes = false;
  o.observer = &both;
  run(s, h, o);
  CHECK(fast.max_mass == doctest::Approx(slow.max_mass).epsilon(1e-9));
  CHECK(fast.violations == slow.over);
  CHECK(fast.slots > 0);
}

TEST_CASE("mass check flags an overloaded region") {
  // Four co-located nodes forced to p = 1/4 each: mass 1 > 1/2.
  const auto s = testing::make_scenario({{0, 0}, {0.01, 0}, {0, 0.01}, {0.01, 0.01}});
  const Neighborhoods h(s);
  std::vector<NodeState> states;
  for (int i = 0; i < 4; ++i) {
    states.emplace_back(Variant::Alg1, 4, s.consts());
    states.back().set_p_for_testing(0.25);
  }
  const std::vector<std::uint8_t> active(4, 1);
  SlotOutcome out;
  verify::ProbabilityMassCheck check;
  check.on_slot(SlotView{s, h, 0, states, active, out});
  CHECK(check.violations == 1);
  CHECK(check.max_mass == doctest::Approx(1.0));
}

TEST_CASE("delivery check on a hand-built slot") {
  const double rb = PhysParams().r_b();
  // transmitter 0 with receivers inside 2B, interferer 1 far away
  const auto s = testing::make_scenario({{0, 0}, {50, 0}, {1.5 * rb, 0}, {0, -rb}});
  const Neighborhoods h(s);
  std::vector<NodeIndex> awake{0, 1, 2, 3}, tx{0, 1};
  SlotOutcome out;
  resolve_slot(s, 0, awake, tx, out);
  REQUIRE(out.has_low_power(0));
  std::vector<NodeState> states;
  for (int i = 0; i < 4; ++i) states.emplace_back(Variant::Alg2, 4, s.consts());
  const std::vector<std::uint8_t> active(4, 1);
  verify::LowPowerDeliveryCheck lp;
  verify::DisjointnessCheck dj;
  lp.on_slot(SlotView{s, h, 0, states, active, out});
  dj.on_slot(SlotView{s, h, 0, states, active, out});
  CHECK(lp.low_power_transmissions == 2);
  CHECK(lp.checks == 2);
  CHECK(lp.violations == 0);
  CHECK(lp.kernel_mismatches == 0);
  CHECK(dj.violations == 0);
}

TEST_CASE("calculus claims") {
  CHECK(verify::calculus_claim_violations(100000) == 0);
  const auto ms = verify::log_spaced(2, 1000000, 300);
  CHECK(ms.front() == 2);
  CHECK(ms.back() == 1000000);
  CHECK(verify::single_tx_peak_violations(ms) == 0);
  // well past 2/e the inequality does fail
  CHECK(1.0 - 0.95 < std::pow(16.0, -0.95));
}

TEST_CASE("transmission count bands") {
  std::vector<SummaryRow> rows(4);
  for (auto& r : rows) {
    r.n = 256;
    r.reason = HaltReason::Budget;
  }
  rows[0].transmissions = 64;   // g = 64
  rows[1].transmissions = 31;   // below g/2, inside the wide band
  rows[2].transmissions = 129;  // above 2g
  rows[3].transmissions = 5;
  rows[3].reason = HaltReason::None;
  const auto c = verify::transmission_counts(rows, 8.0);
  CHECK(c.budget_halts == 3);
  CHECK(c.outside_wide == 1);
  CHECK(c.outside_strict == 2);
}
