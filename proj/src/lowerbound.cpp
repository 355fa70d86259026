#include "localcast/lowerbound.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "localcast/node.hpp"
#include "localcast/rng.hpp"

namespace localcast::lowerbound {

namespace {

constexpr double kTwoOverE = 2.0 / std::numbers::e;

double squared(std::uint64_t n) {
  const double d = static_cast<double>(n);
  return d * d;
}

// Vogel spiral: distinct, evenly spread points inside a disc.
std::vector<Point> fill_disc(Point center, double radius, std::size_t count) {
  std::vector<Point> pts;
  pts.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < count; ++k) {
    const double rho = radius * std::sqrt((k + 0.5) / static_cast<double>(count));
    const double theta = golden * static_cast<double>(k);
    pts.push_back({center.x + rho * std::cos(theta), center.y + rho * std::sin(theta)});
  }
  return pts;
}

}  // namespace

Policy fixed_policy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("policy p must lie in [0, 1]");
  return [p](History, Slot, std::uint64_t) { return p; };
}

Policy alg1_policy(int delta, double gamma) {
  return [delta, gamma](History h, Slot, std::uint64_t n) {
    NodeState node(Variant::Alg1, n, AlgoConsts::make(n, delta, gamma));
    for (std::uint8_t bit : h) {
      // The draw itself does not affect p, so any u works here.
      node.decide_transmit(1.0);
      node.observe(SlotFeedback{bit != 0, false});
      if (node.halted()) return 0.0;
    }
    return node.transmit_probability();
  };
}

Policy parse_policy(const std::string& text, std::uint64_t n, int delta,
                    double gamma) {
  if (text == "alg1") return alg1_policy(delta, gamma);
  if (text.rfind("fixed:", 0) == 0) {
    const std::string arg = text.substr(6);
    if (arg == "auto") return fixed_policy(1.0 / static_cast<double>(n));
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || arg.empty())
      throw std::invalid_argument("bad fixed policy probability '" + arg + "'");
    return fixed_policy(p);
  }
  throw std::invalid_argument("unknown policy '" + text + "'");
}

std::vector<double> zero_history_schedule(const Policy& policy, std::uint64_t n,
                                          Slot t_max) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<Slot>(t_max, 0)));
  const std::vector<std::uint8_t> zeros(static_cast<std::size_t>(std::max<Slot>(t_max, 0)), 0);
  for (Slot t = 1; t <= t_max; ++t) {
    const double p = policy(History(zeros.data(), static_cast<std::size_t>(t - 1)), t, n);
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("policy returned p outside [0, 1]");
    out.push_back(p);
  }
  return out;
}

TwoRegionInstance build_two_region_instance(std::size_t delta, std::size_t sparse,
                                            double r_t, double r_i) {
  if (delta < 1 || sparse < 1) throw std::invalid_argument("region sizes must be >= 1");
  if (!(r_t > 0.0) || !(r_i > r_t))
    throw std::invalid_argument("two-region placement needs r_i > r_t > 0");

  TwoRegionInstance inst;
  inst.dense_count = delta;
  inst.sparse_count = sparse;
  inst.r_t = r_t;
  inst.r_i = r_i;
  inst.center_distance = 0.5 * (r_t + r_i);
  // Cross distances lie within center_distance +- 2 * cluster_radius.
  inst.cluster_radius = 0.9 * std::min(0.5 * r_t, 0.25 * (r_i - r_t));
  inst.dense = fill_disc({0.0, 0.0}, inst.cluster_radius, delta);
  inst.sparse = fill_disc({inst.center_distance, 0.0}, inst.cluster_radius, sparse);

  auto within = [&](const std::vector<Point>& pts) {
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b)
        if (distance(pts[a], pts[b]) > r_t) return false;
    return true;
  };
  bool ok = within(inst.dense) && within(inst.sparse);
  for (const Point& a : inst.dense)
    for (const Point& b : inst.sparse) {
      const double d = distance(a, b);
      if (!(d > r_t && d <= r_i)) ok = false;
    }
  if (!ok) throw std::logic_error("two-region placement failed validation");
  return inst;
}

Scenario to_scenario(const TwoRegionInstance& inst, std::uint64_t n_bound,
                     int delta, double gamma) {
  std::vector<NodeSpec> nodes;
  NodeId id = 0;
  for (const Point& p : inst.dense) nodes.push_back({id++, p, 0, kNever});
  for (const Point& p : inst.sparse) nodes.push_back({id++, p, 0, kNever});
  return Scenario(std::move(nodes), PhysParams{},
                  InterferenceModel::protocol(inst.r_t, inst.r_i),
                  std::max<std::uint64_t>(n_bound, inst.size()), delta, gamma);
}

double exact_single_tx_prob(std::uint64_t m, double p) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (m == 1) return p;
  if (p == 0.0 || p == 1.0) return 0.0;
  const double md = static_cast<double>(m);
  return md * p * std::exp((md - 1.0) * std::log1p(-p));
}

RangePartition::RangePartition(std::uint64_t n) : n_(n), r_(0) {
  if (n < 2 || n > (std::uint64_t{1} << 31))
    throw std::invalid_argument("partition size n must lie in [2, 2^31]");
  while (upper(r_) <= 1.0) ++r_;
}

double RangePartition::lower(int j) const {
  if (j <= 0) return -std::numeric_limits<double>::infinity();
  return std::ldexp(1.0, 4 * j) / squared(n_);
}

double RangePartition::upper(int j) const {
  return std::ldexp(1.0, 4 * (j + 1)) / squared(n_);
}

int RangePartition::range_index(double p) const {
  if (std::isnan(p)) throw std::out_of_range("NaN probability");
  if (p >= upper(r_)) throw std::out_of_range("probability above the last range");
  int j = 0;
  while (p >= upper(j)) ++j;
  return j;
}

std::vector<double> weights(std::span<const double> p_seq,
                            const RangePartition& partition) {
  if (p_seq.empty()) throw std::invalid_argument("weights need a non-empty sequence");
  std::vector<std::size_t> counts(static_cast<std::size_t>(partition.count()), 0);
  for (double p : p_seq) ++counts[static_cast<std::size_t>(partition.range_index(p))];
  std::vector<double> w;
  w.reserve(counts.size());
  for (std::size_t c : counts)
    w.push_back(static_cast<double>(c) / static_cast<double>(p_seq.size()));
  return w;
}

double f_weight(int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("range indices must be >= 0");
  return std::pow(kTwoOverE, std::abs(i - j) + 1);
}

double weighted_score(std::span<const double> w, int j) {
  double score = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) score += f_weight(static_cast<int>(i), j) * w[i];
  return score;
}

Selection select_j(std::span<const double> w, int j_cap) {
  if (j_cap < 0) throw std::invalid_argument("j_cap must be >= 0");
  if (w.empty()) throw std::invalid_argument("empty weight vector");
  const int last = std::min(j_cap, static_cast<int>(w.size()) - 1);
  Selection best{0, weighted_score(w, 0)};
  for (int j = 1; j <= last; ++j) {
    const double s = weighted_score(w, j);
    if (s < best.score) best = {j, s};
  }
  return best;
}

int default_j_cap(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  return (std::bit_width(n) - 1) / 4;
}

std::uint64_t delta_from_j(std::uint64_t n, int j) {
  if (n < 2 || !std::has_single_bit(n)) throw std::invalid_argument("n must be a power of two >= 2");
  const int log_n = std::bit_width(n) - 1;
  if (j < 0 || 4 * j > log_n) throw std::invalid_argument("j must lie in [0, log2(n)/4]");
  const double value = std::round(squared(n) / (4.0 * std::ldexp(1.0, 4 * j)));
  if (value < 1.0) throw std::domain_error("Delta below 1");
  return static_cast<std::uint64_t>(value);
}

BoundCheck per_slot_bound_check(double p_t, int i, int j, std::uint64_t delta,
                                std::size_t sparse) {
  BoundCheck c;
  c.exact = 1.0 - exact_single_tx_prob(delta + sparse, p_t);
  c.bound = 1.0 - f_weight(i, j);
  c.holds = c.exact >= c.bound;
  return c;
}

NtExperiment run_nt_experiment(std::uint64_t m, const Policy& policy,
                               std::uint64_t n, Slot t_max,
                               std::uint64_t trials, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("instance needs at least one node");
  const auto schedule = zero_history_schedule(policy, n, t_max);

  NtExperiment ex;
  ex.m = m;
  ex.trials = trials;
  ex.records.resize(schedule.size());
  double cum = 1.0;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    auto& rec = ex.records[k];
    rec.t = static_cast<Slot>(k + 1);
    rec.p_t = schedule[k];
    rec.exact_cond = 1.0 - exact_single_tx_prob(m, schedule[k]);
    cum *= rec.exact_cond;
    rec.exact_cum = cum;
  }

  const bool per_node = m <= 4096;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    rng::CounterEngine engine(seed, trial);
    for (std::size_t k = 0; k < schedule.size(); ++k) {
      const double p = schedule[k];
      std::uint64_t fired = 0;
      if (per_node) {
        for (std::uint64_t node = 0; node < m && fired < 2; ++node)
          if (engine.uniform01() < p) ++fired;
      } else if (p > 0.0) {
        std::binomial_distribution<long long> draw(static_cast<long long>(m), p);
        fired = static_cast<std::uint64_t>(draw(engine));
      }
      if (fired == 1) break;
      ++ex.records[k].survivors;
    }
  }
  for (auto& rec : ex.records)
    rec.empirical_cum = trials == 0 ? 0.0
                                    : static_cast<double>(rec.survivors) /
                                          static_cast<double>(trials);
  return ex;
}

NtExperiment run_nt_experiment(const TwoRegionInstance& inst,
                               const Policy& policy, std::uint64_t n,
                               Slot t_max, std::uint64_t trials,
                               std::uint64_t seed) {
  return run_nt_experiment(inst.size(), policy, n, t_max, trials, seed);
}

BoundReport analyze_policy(std::uint64_t n, const Policy& policy, Slot t_max,
                           std::size_t sparse, std::optional<int> j_override) {
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  const RangePartition partition(n);
  const auto schedule = zero_history_schedule(policy, n, t_max);

  BoundReport rep;
  rep.n = n;
  rep.r = partition.r();
  rep.j_cap = default_j_cap(n);
  rep.sparse = sparse;
  rep.w = weights(schedule, partition);
  const Selection capped = select_j(rep.w, rep.j_cap);
  const Selection free = select_j(rep.w, rep.r);
  rep.j = j_override.value_or(capped.j);
  rep.score = j_override ? weighted_score(rep.w, rep.j) : capped.score;
  rep.j_unconstrained = free.j;
  rep.score_unconstrained = free.score;
  rep.delta = delta_from_j(n, rep.j);

  double cum_exact = 1.0;
  double cum_bound = 1.0;
  rep.rows.reserve(schedule.size());
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    BoundRow row;
    row.t = static_cast<Slot>(k + 1);
    row.p_t = schedule[k];
    row.range_i = partition.range_index(row.p_t);
    const auto check = per_slot_bound_check(row.p_t, row.range_i, rep.j, rep.delta, sparse);
    row.exact_cond_prob = check.exact;
    row.bound = check.bound;
    row.holds = check.holds;
    cum_exact *= check.exact;
    cum_bound *= check.bound;
    row.cumulative_exact = cum_exact;
    row.cumulative_bound = cum_bound;
    rep.all_hold = rep.all_hold && row.holds;
    rep.rows.push_back(row);
  }

  double log_chain = 0.0;
  for (int i = 0; i < partition.count(); ++i)
    log_chain += rep.w[static_cast<std::size_t>(i)] * static_cast<double>(t_max) *
                 std::log1p(-f_weight(i, rep.j));
  rep.chained_bound = std::exp(log_chain);
  return rep;
}

}  // namespace localcast::lowerbound
