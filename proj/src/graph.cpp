#include "lipext/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "lipext/parallel.hpp"

namespace lipext {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);  // smallest vertex is the root
  }
  std::vector<std::size_t> parent;
};

using Adjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

std::vector<double> dijkstra(const Adjacency& adj, const std::vector<std::size_t>& sources, const PointSet* allowed) {
  std::vector<double> dist(adj.size(), kInfinity);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (std::size_t s : sources) {
    if (allowed != nullptr && !allowed->contains(s)) continue;
    dist[s] = 0.0;
    queue.emplace(0.0, s);
  }
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      if (allowed != nullptr && !allowed->contains(v)) continue;
      if (d + w < dist[v]) {
        dist[v] = d + w;
        queue.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) throw Error(ErrorKind::InvalidInput, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorKind::InvalidInput, "self-loop at vertex " + std::to_string(e.u));
    if (!std::isfinite(e.w) || e.w < 0.0) throw Error(ErrorKind::InvalidInput, "edge weights must be finite and >= 0");
  }
}

std::vector<std::vector<std::size_t>> WeightedGraph::components() const {
  UnionFind uf(n_);
  for (const Edge& e : edges_) uf.unite(e.u, e.v);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n_, n_);
  for (std::size_t v = 0; v < n_; ++v) {
    const std::size_t root = uf.find(v);
    if (slot[root] == n_) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(v);
  }
  return out;
}

bool WeightedGraph::is_connected() const { return components().size() <= 1; }

DiscretizedMetricGraph discretize(const WeightedGraph& graph, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw Error(ErrorKind::DomainError, "eta must be positive");
  if (graph.vertex_count() == 0) throw Error(ErrorKind::InvalidInput, "graph has no vertices");
  if (!graph.is_connected()) throw Error(ErrorKind::Disconnected, "graph is not connected");

  DiscretizedMetricGraph mg;
  mg.source_ = graph;
  mg.eta_ = eta;

  UnionFind uf(graph.vertex_count());
  for (const Edge& e : graph.edges())
    if (e.w == 0.0) uf.unite(e.u, e.v);
  std::vector<std::size_t> class_node(graph.vertex_count(), graph.vertex_count());
  mg.vertex_node_.resize(graph.vertex_count());
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const std::size_t root = uf.find(v);
    if (class_node[root] == graph.vertex_count()) {
      class_node[root] = mg.nodes_.size();
      mg.nodes_.push_back({true, root, 0, 0});
    }
    mg.vertex_node_[v] = class_node[root];
  }

  std::size_t total = mg.nodes_.size();
  for (const Edge& e : graph.edges())
    if (e.w > 0.0) total += static_cast<std::size_t>(std::ceil(e.w / eta)) - 1;
  if (total > kMaxGraphNodes)
    throw Error(ErrorKind::SizeLimit, "discretization needs " + std::to_string(total) + " nodes (limit " +
                                          std::to_string(kMaxGraphNodes) + "); increase eta");

  mg.adj_.resize(total);
  for (std::size_t ei = 0; ei < graph.edges().size(); ++ei) {
    const Edge& e = graph.edges()[ei];
    if (e.w == 0.0) continue;
    const auto segments = static_cast<std::size_t>(std::ceil(e.w / eta));
    const double len = e.w / static_cast<double>(segments);
    std::size_t prev = mg.vertex_node_[e.u];
    for (std::size_t k = 1; k <= segments; ++k) {
      std::size_t next;
      if (k == segments) {
        next = mg.vertex_node_[e.v];
      } else {
        next = mg.nodes_.size();
        mg.nodes_.push_back({false, 0, ei, k});
      }
      if (prev != next) {
        mg.adj_[prev].emplace_back(next, len);
        mg.adj_[next].emplace_back(prev, len);
      }
      prev = next;
    }
  }

  const std::size_t n = mg.nodes_.size();
  mg.dist_.assign(n * n, 0.0);
  parallel_for(n, [&](std::size_t s) {
    const auto row = dijkstra(mg.adj_, {s}, nullptr);
    std::copy(row.begin(), row.end(), mg.dist_.begin() + static_cast<std::ptrdiff_t>(s * n));
  });
  // Symmetrise so that rho(a, b) and rho(b, a) are the same double.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) mg.dist_[b * n + a] = mg.dist_[a * n + b];
  return mg;
}

double DiscretizedMetricGraph::diameter() const noexcept {
  double d = 0.0;
  for (double v : dist_) d = std::max(d, v);
  return d;
}

std::string DiscretizedMetricGraph::node_label(std::size_t a) const {
  const GraphNode& node = nodes_.at(a);
  if (node.is_vertex) return "v" + std::to_string(node.vertex);
  return "e" + std::to_string(node.edge) + ":" + std::to_string(node.offset);
}

FiniteMetricSpace DiscretizedMetricGraph::as_space() const {
  const std::size_t n = nodes_.size();
  std::vector<std::string> labels(n);
  Matrix dist(n, std::vector<double>(n));
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = node_label(a);
    for (std::size_t b = 0; b < n; ++b) dist[a][b] = (*this)(a, b);
  }
  return FiniteMetricSpace(std::move(labels), dist, 0);
}

std::vector<double> cluster_distances(const DiscretizedMetricGraph& mg, const PointSet& cluster,
                                      const std::vector<std::size_t>& sources) {
  return dijkstra(mg.adjacency(), sources, &cluster);
}

double weak_distance(const DiscretizedMetricGraph& mg, const PointSet& cluster, std::size_t x, std::size_t y) {
  if (!cluster.contains(x) || !cluster.contains(y))
    throw Error(ErrorKind::NotInCluster, "weak distance needs both points inside the cluster");
  if (x == y) return 0.0;
  return cluster_distances(mg, cluster, {x})[y];
}

std::vector<PointSet> induced_components(const DiscretizedMetricGraph& mg, const PointSet& set) {
  const std::size_t n = mg.node_count();
  std::vector<PointSet> out;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (!set.contains(s) || seen[s]) continue;
    PointSet comp(n);
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      comp.insert(u);
      for (const auto& [v, w] : mg.adjacency()[u]) {
        if (set.contains(v) && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace lipext
