#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "localcast/geometry.hpp"

namespace localcast::lowerbound {

/// Reception history I_1 .. I_{t-1}, one byte per slot (0 or 1).
using History = std::span<const std::uint8_t>;

/// Transmit probability of an input-determined algorithm at slot t
/// (1-based), given only the node's own reception history and n.
using Policy = std::function<double(History, Slot, std::uint64_t)>;

Policy fixed_policy(double p);

/// The LocalBroadcast1 automaton replayed over the history: one slot per
/// history bit, each bit fed back as "message received". Halted => 0.
Policy alg1_policy(int delta, double gamma);

/// Parses "fixed:<p>", "fixed:auto" (p = 1/n) or "alg1".
Policy parse_policy(const std::string& text, std::uint64_t n, int delta = 16,
                    double gamma = 8.0);

/// p_1 .. p_tmax along the all-zero history.
std::vector<double> zero_history_schedule(const Policy& policy, std::uint64_t n,
                                          Slot t_max);

/// Two disjoint transmission regions inside each other's interference
/// range: a dense cluster at the origin and a sparse one at
/// center_distance.
struct TwoRegionInstance {
  std::size_t dense_count = 0;
  std::size_t sparse_count = 0;
  double r_t = 0.0;
  double r_i = 0.0;
  double center_distance = 0.0;
  double cluster_radius = 0.0;
  std::vector<Point> dense;
  std::vector<Point> sparse;

  std::size_t size() const noexcept { return dense_count + sparse_count; }
};

TwoRegionInstance build_two_region_instance(std::size_t delta, std::size_t sparse,
                                            double r_t, double r_i);

/// Protocol-model scenario over the instance; dense ids first.
Scenario to_scenario(const TwoRegionInstance& inst, std::uint64_t n_bound,
                     int delta = 16, double gamma = 8.0);

/// m p (1-p)^(m-1): probability that exactly one of m iid Bernoulli(p)
/// draws fires.
double exact_single_tx_prob(std::uint64_t m, double p);

/// R_0 = (-inf, 16/n^2), R_j = [16^j/n^2, 16^(j+1)/n^2) for 1 <= j <= r,
/// with r the least index such that 16^(r+1)/n^2 > 1.
class RangePartition {
 public:
  explicit RangePartition(std::uint64_t n);

  std::uint64_t n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  int count() const noexcept { return r_ + 1; }
  double lower(int j) const;
  double upper(int j) const;
  /// Throws std::out_of_range above upper(r).
  int range_index(double p) const;

 private:
  std::uint64_t n_;
  int r_;
};

std::vector<double> weights(std::span<const double> p_seq,
                            const RangePartition& partition);

/// (2/e)^(|i-j|+1).
double f_weight(int i, int j);

/// sum_i f(i, j) w_i.
double weighted_score(std::span<const double> w, int j);

struct Selection {
  int j = 0;
  double score = 0.0;
};

/// argmin over j in [0, min(j_cap, r)] of weighted_score; ties go to the
/// smaller j.
Selection select_j(std::span<const double> w, int j_cap);

/// floor(log2(n) / 4).
int default_j_cap(std::uint64_t n);

/// round(n^2 / (4 * 16^j)). n must be a power of two and
/// 0 <= j <= log2(n)/4.
std::uint64_t delta_from_j(std::uint64_t n, int j);

struct BoundCheck {
  double exact = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// P(N_t | N_{t-1}) on delta + sparse iid nodes against 1 - f(i, j).
BoundCheck per_slot_bound_check(double p_t, int i, int j, std::uint64_t delta,
                                std::size_t sparse = 3);

struct NtRecord {
  Slot t = 0;
  double p_t = 0.0;
  double exact_cond = 0.0;   // P(N_t | N_{t-1})
  double exact_cum = 0.0;    // P(N_t)
  std::uint64_t survivors = 0;
  double empirical_cum = 0.0;
};

struct NtExperiment {
  std::uint64_t m = 0;
  std::uint64_t trials = 0;
  std::vector<NtRecord> records;
};

/// N_t tracking on m indistinguishable nodes running `policy`. While the
/// event holds every history is all-zero, so every node draws with the
/// common p_t. Monte Carlo draws per node when m is small and the binomial
/// transmitter count otherwise.
NtExperiment run_nt_experiment(std::uint64_t m, const Policy& policy,
                               std::uint64_t n, Slot t_max,
                               std::uint64_t trials, std::uint64_t seed);

NtExperiment run_nt_experiment(const TwoRegionInstance& inst,
                               const Policy& policy, std::uint64_t n,
                               Slot t_max, std::uint64_t trials,
                               std::uint64_t seed);

struct BoundRow {
  Slot t = 0;
  double p_t = 0.0;
  int range_i = 0;
  double exact_cond_prob = 0.0;
  double bound = 0.0;
  bool holds = false;
  double cumulative_exact = 0.0;
  double cumulative_bound = 0.0;

  friend bool operator==(const BoundRow&, const BoundRow&) = default;
};

struct BoundReport {
  std::uint64_t n = 0;
  int r = 0;
  int j_cap = 0;
  int j = 0;
  double score = 0.0;
  int j_unconstrained = 0;
  double score_unconstrained = 0.0;
  std::uint64_t delta = 0;
  std::size_t sparse = 0;
  std::vector<double> w;
  std::vector<BoundRow> rows;
  bool all_hold = true;
  /// prod_i (1 - f(i, j))^(w_i t) evaluated in closed form.
  double chained_bound = 0.0;
};

/// Range bookkeeping for the policy's all-zero-history schedule: weights,
/// capped j selection, Delta, and per-slot exact vs bound values.
BoundReport analyze_policy(std::uint64_t n, const Policy& policy, Slot t_max,
                           std::size_t sparse = 3,
                           std::optional<int> j_override = std::nullopt);

}  // namespace localcast::lowerbound
