#include "cssim/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cssim {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void Placement::validate() const {
  if (!(transmission_range_km > 0.0)) throw std::invalid_argument("transmission range must be positive");
  if (!(reference_distance_km > 0.0)) throw std::invalid_argument("reference distance must be positive");
  if (!std::isfinite(path_loss_exponent) || !std::isfinite(jammer_power_db)) {
    throw std::invalid_argument("path-loss exponent and jammer power must be finite");
  }
  auto finite = [](const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); };
  if (!finite(jammer) || !std::all_of(nodes.begin(), nodes.end(), finite)) {
    throw std::invalid_argument("positions must be finite");
  }
}

std::vector<Point> ring_layout(std::size_t n_nodes, double inner_km, double outer_km) {
  const std::size_t inner = (n_nodes + 1) / 2;
  const std::size_t outer = n_nodes - inner;
  std::vector<Point> points;
  points.reserve(n_nodes);
  auto ring = [&](std::size_t count, double radius, double offset) {
    for (std::size_t k = 0; k < count; ++k) {
      const double angle = offset + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      points.push_back({radius * std::cos(angle), radius * std::sin(angle)});
    }
  };
  ring(inner, inner_km, 0.0);
  if (outer > 0) ring(outer, outer_km, std::numbers::pi / static_cast<double>(outer));
  return points;
}

Placement default_placement(std::size_t n_nodes) {
  Placement placement;
  placement.nodes = ring_layout(n_nodes);
  return placement;
}

double received_power_db(double pt_db, double d_km, double d0_km, double phi) {
  if (!(d_km > 0.0)) throw std::domain_error("received_power_db: distance must be positive");
  if (!(d0_km > 0.0)) throw std::domain_error("received_power_db: reference distance must be positive");
  return pt_db + 10.0 * phi * std::log10(d_km / d0_km);
}

double snr_at_node(const Placement& placement, std::size_t node, double noise_var) {
  if (!(noise_var > 0.0)) throw std::domain_error("snr_at_node: noise variance must be positive");
  const double power_db = received_power_db(placement.jammer_power_db, distance(placement.nodes.at(node), placement.jammer),
                                            placement.reference_distance_km, placement.path_loss_exponent);
  return std::pow(10.0, power_db / 10.0) / noise_var;
}

NeighborGraph::NeighborGraph(std::vector<std::vector<std::size_t>> adjacency) : adjacency_(std::move(adjacency)) {
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    for (std::size_t j : adjacency_[i]) {
      if (j == i || j >= adjacency_.size()) throw std::invalid_argument("neighbour graph: invalid edge");
      if (!std::binary_search(adjacency_[j].begin(), adjacency_[j].end(), i)) {
        throw std::invalid_argument("neighbour graph must be symmetric");
      }
    }
    if (std::adjacent_find(adjacency_[i].begin(), adjacency_[i].end()) != adjacency_[i].end()) {
      throw std::invalid_argument("neighbour graph: duplicate edge");
    }
  }
}

bool NeighborGraph::adjacent(std::size_t a, std::size_t b) const {
  const auto& list = neighbors(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::size_t NeighborGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adjacency_) twice += list.size();
  return twice / 2;
}

NeighborGraph build_neighbor_graph(const Placement& placement) {
  const std::size_t n = placement.nodes.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(placement.nodes[i], placement.nodes[j]) <= placement.transmission_range_km) {
        adjacency[i].push_back(j);
        adjacency[j].push_back(i);
      }
    }
  }
  return NeighborGraph(std::move(adjacency));
}

}  // namespace cssim
