#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "localcast/geometry.hpp"
#include "localcast/node.hpp"
#include "localcast/sim.hpp"

namespace localcast {

/// One node of one trial, as written to the summary CSV.
struct SummaryRow {
  NodeId node_id = 0;
  std::uint64_t n = 0;
  std::size_t n_x = 0;
  Slot wake = 0;
  std::optional<Slot> halt;
  std::optional<Slot> first_success;
  HaltReason reason = HaltReason::None;
  int fallbacks = 0;
  std::uint64_t seed = 0;
  Variant variant = Variant::Alg1;
  std::int64_t transmissions = 0;

  std::optional<Slot> active_slots() const {
    if (!halt) return std::nullopt;
    return *halt - wake;
  }

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

std::vector<SummaryRow> summarize(const Trace& trace, std::uint64_t n_bound,
                                  std::uint64_t seed, Variant variant);

enum class FitForm { NlogN_plus_log2, N_plus_log2 };

std::string_view to_string(FitForm f);
FitForm parse_fit_form(std::string_view s);

struct FitCell {
  std::uint64_t n = 0;
  std::size_t n_x = 0;
  double median = 0.0;
  std::size_t count = 0;
};

struct FitResult {
  FitForm form = FitForm::N_plus_log2;
  double a = 0.0;
  double b = 0.0;
  /// RMS residual over cells divided by the mean cell median.
  double residual = 0.0;
  std::vector<FitCell> cells;
};

/// Median active_slots per (n, N_x) cell over halted rows, then least
/// squares of the medians against a * x + b * log2(n)^2 with
/// x = N_x log2(n) or N_x. Needs >= 10 halted rows over >= 4 distinct N_x.
FitResult fit_bound(std::span<const SummaryRow> rows, FitForm form);

struct FallbackStats {
  double max_ratio = 0.0;
  std::size_t nodes = 0;
  NodeId worst_node = 0;
  std::size_t worst_n_x = 0;
  int worst_fallbacks = 0;
};

/// Alg1: k / N_x. Alg2: k log2(n) / (N_x + log2(n)). log2(n) here is
/// ceil(log2(n)) to match the algorithm's own log n.
FallbackStats fallback_stats(std::span<const SummaryRow> rows, Variant variant);

double median(std::vector<double> values);

}  // namespace localcast
