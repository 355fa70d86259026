#pragma once

#include <cstdint>
#include <string_view>

#include "localcast/geometry.hpp"

namespace localcast {

enum class LayoutKind { UniformSquare, Clustered, TwoRegion, Line };
enum class WakeKind { AllZero, Staggered, RandomWindow };

LayoutKind parse_layout(std::string_view s);
std::string_view to_string(LayoutKind k);
WakeKind parse_wake(std::string_view s);

/// Generator parameters. Lengths are absolute (r_t = 1 under the default
/// physical parameters). Non-positive cluster_radius / line_spacing pick
/// r_b / 2 and r_b respectively.
struct GenSpec {
  LayoutKind kind = LayoutKind::UniformSquare;
  std::size_t n = 64;
  double side = 8.0;

  std::size_t cluster_size = 0;  // 0 = one cluster of n nodes
  double cluster_radius = 0.0;
  double cluster_spacing = 2.0;

  std::size_t dense = 4;
  std::size_t sparse = 3;
  double r_t = 1.0;
  double r_i = 4.0;

  double line_spacing = 0.0;

  WakeKind wake = WakeKind::AllZero;
  double wake_rate = 1.0;    // staggered: wake-ups per slot
  Slot wake_window = 1;      // random_window: wake uniform in [0, window)
  Slot lifetime = kNever;    // shutdown = wake + lifetime

  std::uint64_t n_bound = 0;  // 0 = node count
  PhysParams phys;
  int delta = 16;
  double gamma = 8.0;
  std::uint64_t seed = 0;
};

/// Deterministic in the GenSpec; the seed is recorded in Scenario::generator.
Scenario generate_scenario(const GenSpec& spec);

}  // namespace localcast
