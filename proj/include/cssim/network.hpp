#pragma once

#include <cstddef>
#include <vector>

namespace cssim {

struct Point {
  double x = 0.0;  // km
  double y = 0.0;  // km

  bool operator==(const Point&) const = default;
};

double distance(const Point& a, const Point& b);

/// Node and jammer geometry plus the path-loss law. All jammers share one site.
struct Placement {
  std::vector<Point> nodes;
  Point jammer{};
  double transmission_range_km = 0.45;
  double reference_distance_km = 0.05;
  double path_loss_exponent = -2.3;
  double jammer_power_db = 15.0;

  /// Throws std::invalid_argument for a non-positive range or reference
  /// distance, or for non-finite coordinates.
  void validate() const;

  bool operator==(const Placement&) const = default;
};

/// Two concentric rings around the origin: ceil(n/2) nodes at `inner_km`,
/// the rest at `outer_km`, evenly spaced, the outer ring rotated by half its
/// angular spacing. For 10 nodes this is 5 + 5 nodes with a 36 degree offset.
std::vector<Point> ring_layout(std::size_t n_nodes, double inner_km = 0.3, double outer_km = 0.6);

/// Placement used when the scenario does not list node positions.
Placement default_placement(std::size_t n_nodes);

/// pt_db + 10 * phi * log10(d / d0). Throws std::domain_error unless d > 0
/// and d0 > 0.
double received_power_db(double pt_db, double d_km, double d0_km, double phi);

/// Linear SNR of the jammer signal at `node`: 10^(P_rx / 10) / noise_var.
double snr_at_node(const Placement& placement, std::size_t node, double noise_var);

/// Undirected, irreflexive neighbour relation; adjacency lists are sorted.
class NeighborGraph {
 public:
  explicit NeighborGraph(std::vector<std::vector<std::size_t>> adjacency);

  std::size_t size() const { return adjacency_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_.at(node); }
  std::size_t degree(std::size_t node) const { return neighbors(node).size(); }
  bool adjacent(std::size_t a, std::size_t b) const;
  std::size_t edge_count() const;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Edge (i, j) iff i != j and their distance is at most the transmission range.
NeighborGraph build_neighbor_graph(const Placement& placement);

}  // namespace cssim
