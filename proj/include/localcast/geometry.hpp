#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace localcast {

using NodeId = std::uint32_t;
using NodeIndex = std::uint32_t;
using Slot = std::int64_t;

inline constexpr Slot kNever = std::numeric_limits<Slot>::max();

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point p, Point q) noexcept;

inline double squared_distance(Point p, Point q) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return dx * dx + dy * dy;
}

/// Physical-layer constants with transmit power scaled to 1. The
/// transmission radius r_t = (noise * beta)^(-1/alpha) and the broadcast
/// radius r_b = phi * r_t are derived once at construction.
class PhysParams {
 public:
  /// alpha = 3, beta = 2, noise = 1/beta, phi = 1/6, so r_t = 1 and r_b = 1/6.
  PhysParams();
  PhysParams(double alpha, double beta, double noise, double phi);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double noise() const noexcept { return noise_; }
  double phi() const noexcept { return phi_; }
  double power() const noexcept { return 1.0; }
  double r_t() const noexcept { return r_t_; }
  double r_b() const noexcept { return r_b_; }

 private:
  double alpha_;
  double beta_;
  double noise_;
  double phi_;
  double r_t_;
  double r_b_;
};

/// Number of r_b-balls in a hexagonal covering of an r_t-ball: lattice
/// points at spacing sqrt(3) r_b within r_t + r_b of the center. Each such
/// point's hexagonal cell has circumradius r_b, so the balls cover every
/// cell that meets the r_t-ball.
std::size_t cover_constant(const PhysParams& phys);

/// ceil(log2(n)), floored at 1.
int ceil_log2(std::uint64_t n);

struct AlgoConsts {
  int delta = 16;
  double gamma = 8.0;
  int log_n = 1;

  static AlgoConsts make(std::uint64_t n_bound, int delta, double gamma);
};

struct InterferenceModel {
  enum class Kind { Sinr, Protocol };

  Kind kind = Kind::Sinr;
  double r_t = 0.0;  // protocol model only
  double r_i = 0.0;  // protocol model only

  static InterferenceModel sinr() { return {}; }
  static InterferenceModel protocol(double r_t, double r_i);

  friend bool operator==(const InterferenceModel&,
                         const InterferenceModel&) = default;
};

struct NodeSpec {
  NodeId id = 0;
  Point pos;
  Slot wake = 0;
  Slot shutdown = kNever;

  bool awake_at(Slot t) const noexcept { return wake <= t && t < shutdown; }
};

struct GeneratorInfo {
  std::string kind;
  std::uint64_t seed = 0;

  friend bool operator==(const GeneratorInfo&, const GeneratorInfo&) = default;
};

/// An immutable node placement plus everything the algorithms are allowed
/// to know. Validated at construction: distinct ids, distinct positions,
/// wake < shutdown, n_bound >= node count.
class Scenario {
 public:
  Scenario(std::vector<NodeSpec> nodes, PhysParams phys,
           InterferenceModel model, std::uint64_t n_bound, int delta = 16,
           double gamma = 8.0);

  const std::vector<NodeSpec>& nodes() const noexcept { return nodes_; }
  const NodeSpec& node(NodeIndex i) const { return nodes_.at(i); }
  std::size_t size() const noexcept { return nodes_.size(); }
  const PhysParams& phys() const noexcept { return phys_; }
  const InterferenceModel& model() const noexcept { return model_; }
  std::uint64_t n_bound() const noexcept { return n_bound_; }
  const AlgoConsts& consts() const noexcept { return consts_; }

  /// Radius of B_x. Under the protocol model the broadcast and
  /// transmission regions coincide.
  double broadcast_radius() const noexcept;
  /// Radius of T_x.
  double transmission_radius() const noexcept;

  NodeIndex index_of(NodeId id) const;

  std::optional<GeneratorInfo> generator;

 private:
  std::vector<NodeSpec> nodes_;
  PhysParams phys_;
  InterferenceModel model_;
  std::uint64_t n_bound_;
  AlgoConsts consts_;
  std::unordered_map<NodeId, NodeIndex> index_;
};

/// Ids of all nodes y != x with distance(x, y) <= radius, ascending.
std::vector<NodeId> region_members(const Scenario& s, NodeId x, double radius);

/// Members of B_x that x owes its broadcast to at `slot`: woke no later
/// than x and not yet shut down.
std::vector<NodeId> eligible_receivers(const Scenario& s, NodeId x, Slot slot);

/// Per-node index lists for B_x, 2B_x and T_x (each excluding x),
/// built once with a uniform grid.
struct Neighborhoods {
  std::vector<std::vector<NodeIndex>> broadcast;
  std::vector<std::vector<NodeIndex>> double_broadcast;
  std::vector<std::vector<NodeIndex>> transmission;

  explicit Neighborhoods(const Scenario& s);

  /// N_x = |T_x|, counting x itself.
  std::size_t n_x(NodeIndex x) const { return transmission[x].size() + 1; }
};

/// All indices within `radius` of node i (excluding i), ascending.
std::vector<NodeIndex> neighbors_within(const Scenario& s, NodeIndex i,
                                        double radius);

}  // namespace localcast
