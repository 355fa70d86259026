#pragma once

#include <vector>

#include "localcast/geometry.hpp"

namespace testing {

inline localcast::Scenario make_scenario(const std::vector<localcast::Point>& pts,
                                         std::uint64_t n_bound = 0) {
  std::vector<localcast::NodeSpec> nodes;
  for (std::size_t i = 0; i < pts.size(); ++i)
    nodes.push_back({static_cast<localcast::NodeId>(i), pts[i], 0, localcast::kNever});
  return localcast::Scenario(std::move(nodes), localcast::PhysParams(),
                             localcast::InterferenceModel::sinr(),
                             n_bound ? n_bound : pts.size());
}

inline localcast::Scenario make_protocol(const std::vector<localcast::Point>& pts,
                                         double r_t, double r_i) {
  std::vector<localcast::NodeSpec> nodes;
  for (std::size_t i = 0; i < pts.size(); ++i)
    nodes.push_back({static_cast<localcast::NodeId>(i), pts[i], 0, localcast::kNever});
  return localcast::Scenario(std::move(nodes), localcast::PhysParams(),
                             localcast::InterferenceModel::protocol(r_t, r_i), pts.size());
}

}  // namespace testing
