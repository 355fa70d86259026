#include <doctest.h>

#include <stdexcept>

#include "localcast/generate.hpp"
#include "localcast/lowerbound.hpp"

using namespace localcast;

TEST_CASE("uniform square") {
  GenSpec g;
  g.n = 64;
  g.side = 8.0;
  g.seed = 21;
  const Scenario s = generate_scenario(g);
  CHECK(s.size() == 64);
  for (const auto& node : s.nodes()) {
    CHECK(node.pos.x >= 0.0);
    CHECK(node.pos.x <= 8.0);
    CHECK(node.pos.y >= 0.0);
    CHECK(node.pos.y <= 8.0);
    CHECK(node.wake == 0);
    CHECK(node.shutdown == kNever);
  }
  REQUIRE(s.generator.has_value());
  CHECK(s.generator->kind == "uniform_square");
  CHECK(s.generator->seed == 21);
}

TEST_CASE("one cluster fits in a broadcast region") {
  GenSpec g;
  g.kind = LayoutKind::Clustered;
  g.n = 32;
  g.seed = 4;
  const Scenario s = generate_scenario(g);
  const double rb = s.broadcast_radius();
  for (const auto& a : s.nodes())
    for (const auto& b : s.nodes()) CHECK(distance(a.pos, b.pos) <= rb);
  const Neighborhoods h(s);
  for (NodeIndex i = 0; i < s.size(); ++i) {
    CHECK(h.n_x(i) == 32);
    CHECK(h.broadcast[i].size() == 31);
  }
}

TEST_CASE("separate clusters do not share transmission regions") {
  GenSpec g;
  g.kind = LayoutKind::Clustered;
  g.n = 48;
  g.cluster_size = 16;
  g.cluster_spacing = 2.0;
  g.seed = 9;
  const Scenario s = generate_scenario(g);
  const Neighborhoods h(s);
  for (NodeIndex i = 0; i < s.size(); ++i) CHECK(h.n_x(i) == 16);
  g.cluster_spacing = 0.1;
  CHECK_THROWS_AS(generate_scenario(g), std::invalid_argument);
}

TEST_CASE("two region passthrough") {
  GenSpec g;
  g.kind = LayoutKind::TwoRegion;
  g.dense = 4;
  g.sparse = 3;
  g.r_t = 1.0;
  g.r_i = 4.0;
  const Scenario s = generate_scenario(g);
  const auto inst = lowerbound::build_two_region_instance(4, 3, 1.0, 4.0);
  REQUIRE(s.size() == 7);
  CHECK(s.model().kind == InterferenceModel::Kind::Protocol);
  CHECK(s.model().r_i == 4.0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(s.node(static_cast<NodeIndex>(i)).pos == inst.dense[i]);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s.node(static_cast<NodeIndex>(4 + i)).pos == inst.sparse[i]);
}

TEST_CASE("line") {
  GenSpec g;
  g.kind = LayoutKind::Line;
  g.n = 5;
  const Scenario s = generate_scenario(g);
  const double rb = s.phys().r_b();
  for (NodeIndex i = 0; i < 5; ++i) {
    CHECK(s.node(i).pos.x == doctest::Approx(i * rb));
    CHECK(s.node(i).pos.y == 0.0);
  }
}

TEST_CASE("wake models and lifetimes") {
  GenSpec g;
  g.n = 20;
  g.wake = WakeKind::Staggered;
  g.wake_rate = 0.5;
  g.lifetime = 1000;
  Scenario s = generate_scenario(g);
  for (NodeIndex i = 0; i < 20; ++i) {
    CHECK(s.node(i).wake == 2 * static_cast<Slot>(i));
    CHECK(s.node(i).shutdown == s.node(i).wake + 1000);
  }
  g.wake = WakeKind::RandomWindow;
  g.wake_window = 7;
  s = generate_scenario(g);
  for (const auto& node : s.nodes()) {
    CHECK(node.wake >= 0);
    CHECK(node.wake < 7);
  }
  g.wake_window = 0;
  CHECK_THROWS_AS(generate_scenario(g), std::invalid_argument);
}

TEST_CASE("generation is deterministic in the seed") {
  GenSpec g;
  g.n = 50;
  g.seed = 1234;
  g.n_bound = 200;
  const Scenario a = generate_scenario(g);
  const Scenario b = generate_scenario(g);
  CHECK(a.n_bound() == 200);
  for (NodeIndex i = 0; i < a.size(); ++i) CHECK(a.node(i).pos == b.node(i).pos);
  g.seed = 1235;
  const Scenario c = generate_scenario(g);
  CHECK_FALSE(a.node(0).pos == c.node(0).pos);
}

TEST_CASE("layout names") {
  for (auto k : {LayoutKind::UniformSquare, LayoutKind::Clustered, LayoutKind::TwoRegion, LayoutKind::Line})
    CHECK(parse_layout(to_string(k)) == k);
  CHECK_THROWS_AS(parse_layout("hexagon"), std::invalid_argument);
  CHECK_THROWS_AS(parse_wake("sometimes"), std::invalid_argument);
}
