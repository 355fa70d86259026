#include "localcast/generate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "localcast/lowerbound.hpp"
#include "localcast/rng.hpp"

namespace localcast {

LayoutKind parse_layout(std::string_view s) {
  if (s == "uniform_square") return LayoutKind::UniformSquare;
  if (s == "clustered") return LayoutKind::Clustered;
  if (s == "two_region") return LayoutKind::TwoRegion;
  if (s == "line") return LayoutKind::Line;
  throw std::invalid_argument("unknown layout kind '" + std::string(s) + "'");
}

std::string_view to_string(LayoutKind k) {
  switch (k) {
    case LayoutKind::Clustered:
      return "clustered";
    case LayoutKind::TwoRegion:
      return "two_region";
    case LayoutKind::Line:
      return "line";
    case LayoutKind::UniformSquare:
      break;
  }
  return "uniform_square";
}

WakeKind parse_wake(std::string_view s) {
  if (s == "all_zero") return WakeKind::AllZero;
  if (s == "staggered") return WakeKind::Staggered;
  if (s == "random_window") return WakeKind::RandomWindow;
  throw std::invalid_argument("unknown wake model '" + std::string(s) + "'");
}

namespace {

// Keyed apart from the protocol stream, which uses (seed, id, slot).
std::uint64_t layout_key(std::uint64_t seed) { return rng::splitmix64(seed ^ 0x6c61796f75742d31ULL); }

// Streams 0..n-1 are positions, n.. are wake draws.
std::vector<Point> place(const GenSpec& spec) {
  std::vector<Point> pts;
  switch (spec.kind) {
    case LayoutKind::UniformSquare: {
      if (!(spec.side > 0.0)) throw std::invalid_argument("uniform_square needs side > 0");
      for (std::size_t i = 0; i < spec.n; ++i)
        pts.push_back({spec.side * rng::uniform(layout_key(spec.seed), i, 0),
                       spec.side * rng::uniform(layout_key(spec.seed), i, 1)});
      break;
    }
    case LayoutKind::Clustered: {
      const double radius = spec.cluster_radius > 0.0 ? spec.cluster_radius : 0.5 * spec.phys.r_b();
      const std::size_t size = spec.cluster_size > 0 ? spec.cluster_size : spec.n;
      if (!(spec.cluster_spacing > 2.0 * radius))
        throw std::invalid_argument("clusters would overlap: spacing must exceed 2 * cluster_radius");
      const std::size_t clusters = (spec.n + size - 1) / size;
      const auto width = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(clusters))));
      for (std::size_t i = 0; i < spec.n; ++i) {
        const std::size_t c = i / size;
        const Point center{spec.cluster_spacing * static_cast<double>(c % width),
                           spec.cluster_spacing * static_cast<double>(c / width)};
        // Uniform in the disc.
        const double rho = radius * std::sqrt(rng::uniform(layout_key(spec.seed), i, 0));
        const double theta = 2.0 * std::numbers::pi * rng::uniform(layout_key(spec.seed), i, 1);
        pts.push_back({center.x + rho * std::cos(theta), center.y + rho * std::sin(theta)});
      }
      break;
    }
    case LayoutKind::Line: {
      const double spacing = spec.line_spacing > 0.0 ? spec.line_spacing : spec.phys.r_b();
      for (std::size_t i = 0; i < spec.n; ++i) pts.push_back({spacing * static_cast<double>(i), 0.0});
      break;
    }
    case LayoutKind::TwoRegion:
      break;
  }
  return pts;
}

}  // namespace

Scenario generate_scenario(const GenSpec& spec) {
  if (spec.kind == LayoutKind::TwoRegion) {
    const auto inst = lowerbound::build_two_region_instance(spec.dense, spec.sparse, spec.r_t, spec.r_i);
    Scenario s = lowerbound::to_scenario(inst, spec.n_bound, spec.delta, spec.gamma);
    s.generator = GeneratorInfo{std::string(to_string(spec.kind)), spec.seed};
    return s;
  }
  if (spec.n == 0) throw std::invalid_argument("generator needs n >= 1");
  const auto pts = place(spec);

  std::vector<NodeSpec> nodes;
  nodes.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    NodeSpec node;
    node.id = static_cast<NodeId>(i);
    node.pos = pts[i];
    switch (spec.wake) {
      case WakeKind::AllZero:
        node.wake = 0;
        break;
      case WakeKind::Staggered:
        if (!(spec.wake_rate > 0.0)) throw std::invalid_argument("staggered wake needs rate > 0");
        node.wake = static_cast<Slot>(std::floor(static_cast<double>(i) / spec.wake_rate));
        break;
      case WakeKind::RandomWindow:
        if (spec.wake_window < 1) throw std::invalid_argument("random_window needs window >= 1");
        node.wake = static_cast<Slot>(rng::bits(layout_key(spec.seed), pts.size() + i, 0) %
                                      static_cast<std::uint64_t>(spec.wake_window));
        break;
    }
    if (spec.lifetime != kNever) {
      if (spec.lifetime < 1) throw std::invalid_argument("lifetime must be >= 1");
      node.shutdown = node.wake + spec.lifetime;
    }
    nodes.push_back(node);
  }
  const std::uint64_t n_bound = spec.n_bound > 0 ? spec.n_bound : nodes.size();
  Scenario s(std::move(nodes), spec.phys, InterferenceModel::sinr(), n_bound, spec.delta, spec.gamma);
  s.generator = GeneratorInfo{std::string(to_string(spec.kind)), spec.seed};
  return s;
}

}  // namespace localcast
