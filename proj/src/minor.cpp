#include "lipext/minor.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace lipext {

namespace {

using Mask = std::uint32_t;

class PartitionSearch {
 public:
  PartitionSearch(std::vector<Mask> adj, std::size_t m) : adj_(std::move(adj)), m_(m), block_(adj_.size(), 0) {}

  bool run() {
    if (adj_.size() < m_) return false;
    return assign(0, 0);
  }

 private:
  bool connected(Mask set) const {
    Mask seen = set & (~set + 1);
    Mask frontier = seen;
    while (frontier != 0) {
      Mask next = 0;
      for (Mask f = frontier; f != 0; f &= f - 1) next |= adj_[static_cast<std::size_t>(std::countr_zero(f))];
      next &= set & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == set;
  }

  bool check() const {
    std::vector<Mask> blocks(m_, 0);
    for (std::size_t v = 0; v < adj_.size(); ++v) blocks[block_[v]] |= Mask{1} << v;
    std::vector<Mask> reach(m_, 0);
    for (std::size_t b = 0; b < m_; ++b) {
      if (!connected(blocks[b])) return false;
      for (Mask f = blocks[b]; f != 0; f &= f - 1) reach[b] |= adj_[static_cast<std::size_t>(std::countr_zero(f))];
    }
    for (std::size_t a = 0; a < m_; ++a)
      for (std::size_t b = a + 1; b < m_; ++b)
        if ((reach[a] & blocks[b]) == 0) return false;
    return true;
  }

  // Restricted growth strings: vertex v joins an existing block or opens
  // block `used`; enough vertices must remain to open the missing blocks.
  bool assign(std::size_t v, std::size_t used) {
    const std::size_t n = adj_.size();
    if (v == n) return used == m_ && check();
    if (n - v < m_ - used) return false;
    for (std::size_t b = 0; b < used; ++b) {
      block_[v] = b;
      if (assign(v + 1, used)) return true;
    }
    if (used < m_) {
      block_[v] = used;
      if (assign(v + 1, used + 1)) return true;
    }
    return false;
  }

  std::vector<Mask> adj_;
  std::size_t m_;
  std::vector<std::size_t> block_;
};

}  // namespace

bool has_minor(const WeightedGraph& graph, std::size_t m) {
  const std::size_t n = graph.vertex_count();
  if (n > kMaxMinorVertices)
    throw Error(ErrorKind::SizeLimit, "minor search is limited to " + std::to_string(kMaxMinorVertices) + " vertices");
  if (m <= 1) return m == 0 || n >= 1;
  for (const auto& comp : graph.components()) {
    if (comp.size() < m) continue;
    std::vector<std::size_t> local(n, n);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
    std::vector<Mask> adj(comp.size(), 0);
    std::size_t edges = 0;
    for (const Edge& e : graph.edges()) {
      if (local[e.u] == n) continue;
      const Mask bit_v = Mask{1} << local[e.v];
      if ((adj[local[e.u]] & bit_v) == 0) ++edges;
      adj[local[e.u]] |= bit_v;
      adj[local[e.v]] |= Mask{1} << local[e.u];
    }
    if (edges < m * (m - 1) / 2) continue;
    if (PartitionSearch(std::move(adj), m).run()) return true;
  }
  return false;
}

}  // namespace lipext
