#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "localcast/analysis.hpp"
#include "localcast/generate.hpp"
#include "localcast/sim.hpp"

namespace localcast::verify {

/// Every non-transmitting node in 2B_x of a LowPower transmitter x must
/// decode x, by direct SINR evaluation. Also cross-checks the channel
/// kernel's decode map for awake receivers.
class LowPowerDeliveryCheck final : public SlotObserver {
 public:
  void on_slot(const SlotView& view) override;

  std::uint64_t low_power_transmissions = 0;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::uint64_t kernel_mismatches = 0;
};

/// Per-slot transmit-probability mass over each broadcast region (awake,
/// unhalted members including the center) must stay <= 1/2. Maintained
/// incrementally; any candidate violation is recomputed from scratch.
class ProbabilityMassCheck final : public SlotObserver {
 public:
  void on_slot(const SlotView& view) override;

  std::uint64_t slots = 0;
  std::uint64_t violations = 0;
  double max_mass = 0.0;

 private:
  std::vector<double> last_p_;
  std::vector<double> mass_;
};

/// No broadcast region contains two LowPower transmitters in one slot.
class DisjointnessCheck final : public SlotObserver {
 public:
  void on_slot(const SlotView& view) override;

  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
};

class ObserverList final : public SlotObserver {
 public:
  void add(SlotObserver* o) { list_.push_back(o); }
  void on_slot(const SlotView& view) override {
    for (auto* o : list_) o->on_slot(view);
  }

 private:
  std::vector<SlotObserver*> list_;
};

struct CorpusJob {
  GenSpec gen;
  Variant variant = Variant::Alg1;
  std::uint64_t seed = 0;
  Slot max_slots = 0;
};

struct CorpusStats {
  std::uint64_t trials = 0;
  std::uint64_t slots = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t lp_transmissions = 0;
  std::uint64_t delivery_checks = 0;
  std::uint64_t delivery_violations = 0;
  std::uint64_t kernel_mismatches = 0;
  std::uint64_t mass_violations = 0;
  double max_mass = 0.0;
  std::uint64_t disjoint_pairs = 0;
  std::uint64_t disjoint_violations = 0;
  std::vector<SummaryRow> rows;

  void merge(const CorpusStats& other);
};

struct ScanFlags {
  bool delivery = true;
  bool mass = true;
  bool disjoint = true;
};

/// Runs every job (parallel over jobs, merged in job order). The scenario
/// seed is gen.seed; the protocol seed is job.seed.
CorpusStats scan_corpus(std::span<const CorpusJob> jobs, ScanFlags flags = {});

namespace serial {
CorpusStats scan_corpus(std::span<const CorpusJob> jobs, ScanFlags flags = {});
}

/// Grid points x in [0, 2/e] where 1 - x < 16^(-x).
std::uint64_t calculus_claim_violations(std::size_t grid_points);

/// m in `ms` where m p (1-p)^(m-1) at p = 1/m exceeds 2/e.
std::uint64_t single_tx_peak_violations(std::span<const std::uint64_t> ms);

/// ~count log-spaced integers in [lo, hi], deduplicated, both ends included.
std::vector<std::uint64_t> log_spaced(std::uint64_t lo, std::uint64_t hi,
                                      std::size_t count);

struct TransmissionCheck {
  std::size_t budget_halts = 0;
  std::size_t outside_wide = 0;    // outside [g/2 - 3 sqrt(g), 2g]
  std::size_t outside_strict = 0;  // outside [g/2, 2g]
};

/// Transmission counts of Budget-halted nodes against g = gamma * log_n.
TransmissionCheck transmission_counts(std::span<const SummaryRow> rows,
                                      double gamma);

}  // namespace localcast::verify
