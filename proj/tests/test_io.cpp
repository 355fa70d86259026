#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "helpers.hpp"
#include "localcast/generate.hpp"
#include "localcast/io.hpp"

using namespace localcast;

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -2.5, 1.0 / 3.0, 1e-300, 6.02214076e23, 0.1 + 0.2,
                   std::numeric_limits<double>::max(), std::numeric_limits<double>::denorm_min()})
    CHECK(io::parse_double(io::format_double(v)) == v);
  CHECK(io::format_double(0.5) == "0.5");
  CHECK_THROWS_AS(io::parse_double("1,5"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_double(""), std::invalid_argument);
}

TEST_CASE("scenario json round-trip") {
  GenSpec g;
  g.n = 30;
  g.seed = 8;
  g.wake = WakeKind::RandomWindow;
  g.wake_window = 40;
  g.lifetime = 5000;
  g.n_bound = 64;
  g.delta = 4;
  g.gamma = 3.5;
  const Scenario s = generate_scenario(g);
  const std::string text = io::scenario_to_json(s);
  const Scenario back = io::scenario_from_json(text);
  CHECK(io::scenario_to_json(back) == text);
  CHECK(back.n_bound() == 64);
  CHECK(back.consts().delta == 4);
  CHECK(back.consts().gamma == 3.5);
  CHECK(back.generator == s.generator);
  for (NodeIndex i = 0; i < s.size(); ++i) {
    CHECK(back.node(i).pos == s.node(i).pos);
    CHECK(back.node(i).wake == s.node(i).wake);
    CHECK(back.node(i).shutdown == s.node(i).shutdown);
  }

  GenSpec two;
  two.kind = LayoutKind::TwoRegion;
  const Scenario p = generate_scenario(two);
  const Scenario pb = io::scenario_from_json(io::scenario_to_json(p));
  CHECK(pb.model() == p.model());

  CHECK_THROWS(io::scenario_from_json("{\"nodes\": 3}"));
  CHECK_THROWS(io::scenario_from_json("not json"));
}

TEST_CASE("trace jsonl round-trip") {
  const auto s = testing::make_scenario({{0, 0}, {0.05, 0}, {0.1, 0.02}, {3, 3}}, 8);
  for (Variant v : {Variant::Alg1, Variant::Alg2}) {
    RunOptions o;
    o.variant = v;
    o.seed = 31;
    const Trace tr = run(s, o);
    std::ostringstream first;
    io::write_trace_jsonl(first, s, tr);
    std::istringstream in(first.str());
    const Trace back = io::read_trace_jsonl(in, s);
    CHECK(back.nodes == tr.nodes);
    CHECK(back.slots_run == tr.slots_run);
    REQUIRE(back.outcomes.size() == tr.outcomes.size());
    for (std::size_t k = 0; k < tr.outcomes.size(); ++k) {
      CHECK(back.outcomes[k].slot == tr.outcomes[k].slot);
      CHECK(back.outcomes[k].transmitters == tr.outcomes[k].transmitters);
      CHECK(back.outcomes[k].decodes == tr.outcomes[k].decodes);
      CHECK(back.outcomes[k].low_power == tr.outcomes[k].low_power);
    }
    std::ostringstream second;
    io::write_trace_jsonl(second, s, back);
    CHECK(second.str() == first.str());
  }
}

TEST_CASE("summary csv round-trip") {
  std::vector<SummaryRow> rows(3);
  rows[0] = {7, 256, 12, 3, 9000, 40, HaltReason::Budget, 4, 99, Variant::Alg1, 61};
  rows[1] = {8, 256, 12, 5, std::nullopt, std::nullopt, HaltReason::None, 0, 99, Variant::Alg2, 2};
  rows[2] = {9, 64, 1, 0, 120, 120, HaltReason::LowPowerSuccess, 0, 3, Variant::Alg2, 1};
  std::ostringstream out;
  io::write_summary_csv(out, rows);
  CHECK(out.str().rfind("node_id,n,N_x,wake,halt,first_success,reason,fallbacks,seed,variant,transmissions\n", 0) == 0);
  std::istringstream in(out.str());
  const auto back = io::read_summary_csv(in);
  CHECK(back == rows);
  std::ostringstream again;
  io::write_summary_csv(again, back);
  CHECK(again.str() == out.str());

  std::istringstream bad("node_id,n\n1,2\n");
  CHECK_THROWS(io::read_summary_csv(bad));
}

TEST_CASE("bound csv round-trip") {
  const auto rep = lowerbound::analyze_policy(256, lowerbound::parse_policy("alg1", 256), 500);
  std::ostringstream out;
  io::write_bound_csv(out, rep.rows);
  std::istringstream in(out.str());
  const auto back = io::read_bound_csv(in);
  CHECK(back == rep.rows);
  std::ostringstream again;
  io::write_bound_csv(again, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("fit json round-trip") {
  FitResult f;
  f.form = FitForm::NlogN_plus_log2;
  f.a = 1.0 / 3.0;
  f.b = -2.75;
  f.residual = 0.0123;
  f.cells = {{256, 8, 1234.5, 50}, {256, 16, 2400.0, 50}};
  const std::string text = io::fit_to_json(f);
  const FitResult back = io::fit_from_json(text);
  CHECK(back.form == f.form);
  CHECK(back.a == f.a);
  CHECK(back.b == f.b);
  CHECK(back.residual == f.residual);
  REQUIRE(back.cells.size() == 2);
  CHECK(back.cells[1].median == 2400.0);
  CHECK(io::fit_to_json(back) == text);
}

TEST_CASE("fnv1a") {
  CHECK(io::fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(io::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(io::fnv1a("abc") != io::fnv1a("acb"));
}
