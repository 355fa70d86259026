#include "localcast/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace localcast {

double distance(Point p, Point q) noexcept {
  return std::hypot(p.x - q.x, p.y - q.y);
}

PhysParams::PhysParams() : PhysParams(3.0, 2.0, 0.5, 1.0 / 6.0) {}

PhysParams::PhysParams(double alpha, double beta, double noise, double phi)
    : alpha_(alpha), beta_(beta), noise_(noise), phi_(phi) {
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
  if (!(beta >= 1.0)) throw std::invalid_argument("beta must be >= 1");
  if (!(noise > 0.0)) throw std::invalid_argument("noise must be positive");
  if (!(phi > 0.0 && phi <= 1.0 / 6.0))
    throw std::invalid_argument("phi must lie in (0, 1/6]");
  r_t_ = std::pow(noise * beta, -1.0 / alpha);
  r_b_ = phi * r_t_;
}

std::size_t cover_constant(const PhysParams& phys) {
  const double rb = phys.r_b();
  const double reach = phys.r_t() + rb;
  const double s = std::sqrt(3.0) * rb;
  const double row = s * std::sqrt(3.0) / 2.0;
  const long rows = static_cast<long>(std::ceil(reach / row)) + 1;
  const long cols = static_cast<long>(std::ceil(reach / s)) + rows;
  std::size_t k = 0;
  for (long j = -rows; j <= rows; ++j)
    for (long i = -cols; i <= cols; ++i) {
      const double x = s * (static_cast<double>(i) + 0.5 * static_cast<double>(j));
      const double y = row * static_cast<double>(j);
      if (std::hypot(x, y) <= reach) ++k;
    }
  return k;
}

int ceil_log2(std::uint64_t n) {
  int k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < n) ++k;
  return std::max(k, 1);
}

AlgoConsts AlgoConsts::make(std::uint64_t n_bound, int delta, double gamma) {
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");
  if (!(gamma >= 1.0)) throw std::invalid_argument("gamma must be >= 1");
  return AlgoConsts{delta, gamma, ceil_log2(n_bound)};
}

InterferenceModel InterferenceModel::protocol(double r_t, double r_i) {
  if (!(r_t > 0.0)) throw std::invalid_argument("protocol r_t must be positive");
  if (!(r_i >= r_t)) throw std::invalid_argument("protocol r_i must be >= r_t");
  return InterferenceModel{Kind::Protocol, r_t, r_i};
}

Scenario::Scenario(std::vector<NodeSpec> nodes, PhysParams phys,
                   InterferenceModel model, std::uint64_t n_bound, int delta,
                   double gamma)
    : nodes_(std::move(nodes)),
      phys_(phys),
      model_(model),
      n_bound_(n_bound),
      consts_(AlgoConsts::make(n_bound, delta, gamma)) {
  if (n_bound_ < 1 || n_bound_ < nodes_.size())
    throw std::invalid_argument("n_bound must be >= number of nodes");
  if (model_.kind == InterferenceModel::Kind::Protocol)
    model_ = InterferenceModel::protocol(model_.r_t, model_.r_i);

  index_.reserve(nodes_.size());
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (!std::isfinite(n.pos.x) || !std::isfinite(n.pos.y))
      throw std::invalid_argument("node " + std::to_string(n.id) +
                                  " has a non-finite position");
    if (n.wake < 0) throw std::invalid_argument("wake slot must be >= 0");
    if (n.wake >= n.shutdown)
      throw std::invalid_argument("node " + std::to_string(n.id) +
                                  ": wake must precede shutdown");
    if (!index_.emplace(n.id, i).second)
      throw std::invalid_argument("duplicate node id " + std::to_string(n.id));
  }

  std::map<std::pair<double, double>, NodeId> seen;
  for (const auto& n : nodes_) {
    auto [it, fresh] = seen.emplace(std::pair{n.pos.x, n.pos.y}, n.id);
    if (!fresh)
      throw std::invalid_argument("nodes " + std::to_string(it->second) +
                                  " and " + std::to_string(n.id) +
                                  " are co-located");
  }
}

double Scenario::broadcast_radius() const noexcept {
  return model_.kind == InterferenceModel::Kind::Protocol ? model_.r_t
                                                          : phys_.r_b();
}

double Scenario::transmission_radius() const noexcept {
  return model_.kind == InterferenceModel::Kind::Protocol ? model_.r_t
                                                          : phys_.r_t();
}

NodeIndex Scenario::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw std::out_of_range("unknown node id " + std::to_string(id));
  return it->second;
}

namespace {

// Bucket grid keyed by integer cell coordinates; cell edge = query radius.
class Grid {
 public:
  Grid(const Scenario& s, double cell) : s_(s), cell_(cell) {
    for (NodeIndex i = 0; i < s.size(); ++i) cells_[key(s.node(i).pos)].push_back(i);
  }

  template <class Fn>
  void visit_near(Point p, Fn&& fn) const {
    const auto [cx, cy] = key(p);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find({cx + dx, cy + dy});
        if (it == cells_.end()) continue;
        for (NodeIndex j : it->second) fn(j);
      }
  }

 private:
  std::pair<std::int64_t, std::int64_t> key(Point p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_)),
            static_cast<std::int64_t>(std::floor(p.y / cell_))};
  }

  const Scenario& s_;
  double cell_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<NodeIndex>> cells_;
};

}  // namespace

std::vector<NodeIndex> neighbors_within(const Scenario& s, NodeIndex i,
                                        double radius) {
  std::vector<NodeIndex> out;
  const Point p = s.node(i).pos;
  for (NodeIndex j = 0; j < s.size(); ++j)
    if (j != i && distance(p, s.node(j).pos) <= radius) out.push_back(j);
  return out;
}

std::vector<NodeId> region_members(const Scenario& s, NodeId x, double radius) {
  const NodeIndex i = s.index_of(x);
  std::vector<NodeId> ids;
  for (NodeIndex j : neighbors_within(s, i, radius)) ids.push_back(s.node(j).id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<NodeId> eligible_receivers(const Scenario& s, NodeId x, Slot slot) {
  const NodeIndex i = s.index_of(x);
  const auto& me = s.node(i);
  std::vector<NodeId> ids;
  for (NodeIndex j : neighbors_within(s, i, s.broadcast_radius())) {
    const auto& y = s.node(j);
    if (y.wake <= me.wake && y.shutdown > slot) ids.push_back(y.id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

Neighborhoods::Neighborhoods(const Scenario& s)
    : broadcast(s.size()), double_broadcast(s.size()), transmission(s.size()) {
  const double rb = s.broadcast_radius();
  const double rt = s.transmission_radius();
  const double cell = std::max({rt, 2.0 * rb});
  Grid grid(s, cell);
  for (NodeIndex i = 0; i < s.size(); ++i) {
    const Point p = s.node(i).pos;
    grid.visit_near(p, [&](NodeIndex j) {
      if (j == i) return;
      const double d = distance(p, s.node(j).pos);
      if (d <= rb) broadcast[i].push_back(j);
      if (d <= 2.0 * rb) double_broadcast[i].push_back(j);
      if (d <= rt) transmission[i].push_back(j);
    });
    std::sort(broadcast[i].begin(), broadcast[i].end());
    std::sort(double_broadcast[i].begin(), double_broadcast[i].end());
    std::sort(transmission[i].begin(), transmission[i].end());
  }
}

}  // namespace localcast
