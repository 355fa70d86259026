#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include <omp.h>

#include "localcast/channel.hpp"
#include "localcast/generate.hpp"
#include "localcast/rng.hpp"
#include "localcast/trials.hpp"
#include "localcast/verify.hpp"

using namespace localcast;

TEST_CASE("run_trials keeps index order") {
  omp_set_num_threads(4);
  const std::function<std::uint64_t(std::size_t)> fn = [](std::size_t i) {
    std::uint64_t h = i;
    for (int k = 0; k < 1000 + static_cast<int>(i % 7) * 500; ++k) h = rng::splitmix64(h);
    return h;
  };
  CHECK(run_trials<std::uint64_t>(257, fn) == serial::run_trials<std::uint64_t>(257, fn));
  CHECK(run_trials<std::uint64_t>(0, fn).empty());
}

TEST_CASE("run_trials rethrows") {
  const std::function<int(std::size_t)> fn = [](std::size_t i) -> int {
    if (i == 13) throw std::runtime_error("trial 13");
    return static_cast<int>(i);
  };
  CHECK_THROWS_AS(run_trials<int>(40, fn), std::runtime_error);
}

TEST_CASE("worker cap from the environment") {
  setenv("LOCALCAST_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("LOCALCAST_THREADS", "0", 1);
  CHECK(worker_count() >= 1);
  unsetenv("LOCALCAST_THREADS");
}

TEST_CASE("parallel slot kernel matches the serial reference") {
  omp_set_num_threads(4);
  GenSpec g;
  g.n = 400;
  g.side = 6.0;
  g.seed = 2;
  const Scenario s = generate_scenario(g);
  std::vector<NodeIndex> awake;
  for (NodeIndex i = 0; i < s.size(); ++i) awake.push_back(i);
  for (std::uint64_t t = 0; t < 30; ++t) {
    std::vector<NodeIndex> tx;
    for (NodeIndex i = 0; i < s.size(); ++i)
      if (rng::uniform(5, i, t) < 0.02 * static_cast<double>(t % 5)) tx.push_back(i);
    SlotOutcome fast;
    resolve_slot(s, static_cast<Slot>(t), awake, tx, fast);
    const auto ref = reference::resolve_slot(s, static_cast<Slot>(t), awake, tx);
    CHECK(fast.decodes == ref.decodes);
    CHECK(fast.low_power == ref.low_power);
    CHECK(fast.rx_power == ref.rx_power);
  }
}

TEST_CASE("parallel corpus scan matches the serial one") {
  omp_set_num_threads(4);
  std::vector<verify::CorpusJob> jobs;
  for (std::uint64_t k = 0; k < 6; ++k) {
    verify::CorpusJob j;
    j.gen.n = 40;
    j.gen.side = 4.0;
    j.gen.seed = k;
    j.seed = 100 + k;
    j.variant = k % 2 ? Variant::Alg2 : Variant::Alg1;
    jobs.push_back(j);
  }
  const auto par = verify::scan_corpus(jobs);
  const auto ser = verify::serial::scan_corpus(jobs);
  CHECK(par.rows == ser.rows);
  CHECK(par.slots == ser.slots);
  CHECK(par.delivery_checks == ser.delivery_checks);
  CHECK(par.max_mass == ser.max_mass);
  CHECK(par.disjoint_pairs == ser.disjoint_pairs);
}
