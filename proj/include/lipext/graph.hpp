#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lipext/metric.hpp"

namespace lipext {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 1.0;
};

/// Undirected graph with nonnegative finite edge weights and no self-loops.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Throws Error(InvalidInput) on self-loops, bad indices or bad weights.
  WeightedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool is_connected() const;
  /// Vertex sets of the connected components, each sorted, ordered by their
  /// smallest vertex.
  std::vector<std::vector<std::size_t>> components() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Node of a discretized metric graph: an original vertex (after collapsing
/// zero-weight edges, the smallest vertex of its class) or the k-th interior
/// subdivision point of an edge.
struct GraphNode {
  bool is_vertex = true;
  std::size_t vertex = 0;
  std::size_t edge = 0;
  std::size_t offset = 0;
};

/// Largest node count for which the all-pairs matrix is materialised.
inline constexpr std::size_t kMaxGraphNodes = 5000;

/// Metric graph sampled at step eta: every edge of weight w becomes
/// ceil(w / eta) equal segments, zero-weight edges identify their endpoints,
/// and rho is the shortest-path metric on the resulting nodes.
class DiscretizedMetricGraph {
 public:
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
  const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency() const noexcept { return adj_; }
  double eta() const noexcept { return eta_; }
  const WeightedGraph& source() const noexcept { return source_; }

  /// Node carrying original vertex v.
  std::size_t vertex_node(std::size_t v) const { return vertex_node_.at(v); }
  double operator()(std::size_t a, std::size_t b) const noexcept { return dist_[a * nodes_.size() + b]; }
  double diameter() const noexcept;
  std::string node_label(std::size_t a) const;

  /// The node set as a finite metric space (labels from node_label).
  FiniteMetricSpace as_space() const;

 private:
  friend DiscretizedMetricGraph discretize(const WeightedGraph& graph, double eta);

  WeightedGraph source_;
  double eta_ = 0.0;
  std::vector<GraphNode> nodes_;
  std::vector<std::size_t> vertex_node_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj_;
  std::vector<double> dist_;
};

/// Throws Error(Disconnected | DomainError | SizeLimit).
DiscretizedMetricGraph discretize(const WeightedGraph& graph, double eta);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Shortest-path distances from `sources` using only nodes of `cluster`;
/// +inf for unreachable nodes and for nodes outside the cluster.
std::vector<double> cluster_distances(const DiscretizedMetricGraph& mg, const PointSet& cluster,
                                      const std::vector<std::size_t>& sources);

/// rho_C(x, y): path length inside the cluster, +inf if x and y are not
/// connected within it. Throws Error(NotInCluster).
double weak_distance(const DiscretizedMetricGraph& mg, const PointSet& cluster, std::size_t x, std::size_t y);

/// Connected components of the subgraph induced by `set`, ordered by their
/// smallest node.
std::vector<PointSet> induced_components(const DiscretizedMetricGraph& mg, const PointSet& set);

}  // namespace lipext
