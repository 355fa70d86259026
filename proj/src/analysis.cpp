#include "localcast/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace localcast {

std::vector<SummaryRow> summarize(const Trace& trace, std::uint64_t n_bound,
                                  std::uint64_t seed, Variant variant) {
  std::vector<SummaryRow> rows;
  rows.reserve(trace.nodes.size());
  for (const auto& rec : trace.nodes) {
    SummaryRow row;
    row.node_id = rec.id;
    row.n = n_bound;
    row.n_x = rec.n_x;
    row.wake = rec.wake;
    row.halt = rec.halt_slot;
    row.first_success = rec.first_success;
    row.reason = rec.reason;
    row.fallbacks = rec.fallbacks;
    row.seed = seed;
    row.variant = variant;
    row.transmissions = rec.transmissions;
    rows.push_back(row);
  }
  return rows;
}

std::string_view to_string(FitForm f) {
  return f == FitForm::NlogN_plus_log2 ? "NlogN_plus_log2" : "N_plus_log2";
}

FitForm parse_fit_form(std::string_view s) {
  if (s == "NlogN_plus_log2") return FitForm::NlogN_plus_log2;
  if (s == "N_plus_log2") return FitForm::N_plus_log2;
  throw std::invalid_argument("unknown fit form '" + std::string(s) + "'");
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

FitResult fit_bound(std::span<const SummaryRow> rows, FitForm form) {
  std::map<std::pair<std::uint64_t, std::size_t>, std::vector<double>> cells;
  std::set<std::size_t> distinct;
  std::size_t used = 0;
  for (const auto& row : rows) {
    const auto active = row.active_slots();
    if (!active) continue;
    cells[{row.n, row.n_x}].push_back(static_cast<double>(*active));
    distinct.insert(row.n_x);
    ++used;
  }
  if (used < 10 || distinct.size() < 4)
    throw std::invalid_argument("fit needs >= 10 halted rows over >= 4 distinct N_x");

  FitResult fit;
  fit.form = form;
  // Normal equations for y = a * u + b * v.
  double suu = 0, suv = 0, svv = 0, suy = 0, svy = 0;
  std::vector<std::array<double, 3>> design;
  for (auto& [key, values] : cells) {
    FitCell cell{key.first, key.second, median(values), values.size()};
    const double log_n = ceil_log2(cell.n);
    const double u = form == FitForm::NlogN_plus_log2
                         ? static_cast<double>(cell.n_x) * log_n
                         : static_cast<double>(cell.n_x);
    const double v = log_n * log_n;
    suu += u * u;
    suv += u * v;
    svv += v * v;
    suy += u * cell.median;
    svy += v * cell.median;
    design.push_back({u, v, cell.median});
    fit.cells.push_back(cell);
  }
  const double det = suu * svv - suv * suv;
  if (!(std::abs(det) > 1e-12 * std::max(1.0, suu * svv)))
    throw std::invalid_argument("degenerate design matrix");
  fit.a = (suy * svv - svy * suv) / det;
  fit.b = (svy * suu - suy * suv) / det;

  double ss = 0.0;
  double mean = 0.0;
  for (const auto& [u, v, y] : design) {
    const double r = y - (fit.a * u + fit.b * v);
    ss += r * r;
    mean += y;
  }
  mean /= static_cast<double>(design.size());
  const double rms = std::sqrt(ss / static_cast<double>(design.size()));
  fit.residual = mean != 0.0 ? rms / std::abs(mean) : rms;
  return fit;
}

FallbackStats fallback_stats(std::span<const SummaryRow> rows, Variant variant) {
  FallbackStats st;
  for (const auto& row : rows) {
    if (row.variant != variant) continue;
    const double k = row.fallbacks;
    const double nx = static_cast<double>(row.n_x);
    const double log_n = ceil_log2(row.n);
    const double ratio = variant == Variant::Alg1 ? k / nx : k * log_n / (nx + log_n);
    ++st.nodes;
    if (st.nodes == 1 || ratio > st.max_ratio) {
      st.max_ratio = ratio;
      st.worst_node = row.node_id;
      st.worst_n_x = row.n_x;
      st.worst_fallbacks = row.fallbacks;
    }
  }
  return st;
}

}  // namespace localcast
