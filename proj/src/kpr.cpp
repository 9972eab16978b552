#include "lipext/kpr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "lipext/parallel.hpp"

namespace lipext {

namespace {

constexpr std::size_t kNoAnchor = std::numeric_limits<std::size_t>::max();

bool leq(double a, double b) { return a <= b + 1e-12 * std::max(1.0, std::abs(b)); }

struct ActiveCluster {
  PointSet set;
  std::vector<std::size_t> anchors;  // s_1 .. s_i, kNoAnchor for an empty slot
  std::vector<PointSet> chain;       // enclosing active clusters, outermost first
};

struct Branch {
  std::vector<ActiveCluster> active;
  std::vector<PointSet> inactive;
};

std::size_t pow3(std::size_t e) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < e; ++i) v *= 3;
  return v;
}

PointSet set_minus(const PointSet& a, const PointSet& b) {
  PointSet out(a.universe());
  for (std::size_t x : a.members())
    if (!b.contains(x)) out.insert(x);
  return out;
}

ActiveCluster child(const ActiveCluster& parent, PointSet set, std::size_t anchor) {
  ActiveCluster c{std::move(set), parent.anchors, parent.chain};
  c.anchors.push_back(anchor);
  c.chain.push_back(c.set);
  return c;
}

// One round i (1-based) of the decomposition for branch value delta_i.
Branch refine(const DiscretizedMetricGraph& mg, const Branch& parent, std::size_t i, std::size_t delta, double r,
              std::size_t m) {
  const double far = 24.0 * static_cast<double>(m) * r;
  Branch out;
  out.inactive = parent.inactive;
  for (const ActiveCluster& c : parent.active) {
    const std::size_t si = c.anchors[i - 1];
    std::size_t l = 0;
    while (l < c.anchors.size() && c.anchors[l] != kNoAnchor) ++l;

    if (si != kNoAnchor) {
      // Shifted annuli 3r(n-1) <= rho_C(v, s_i) - delta r < 3rn, then components.
      const auto dist = cluster_distances(mg, c.set, {si});
      std::map<long long, PointSet> annuli;
      for (std::size_t v : c.set.members()) {
        const double t = (dist[v] - static_cast<double>(delta) * r) / (3.0 * r);
        const auto n = static_cast<long long>(std::floor(t + 1e-12)) + 1;
        auto [it, inserted] = annuli.try_emplace(n, mg.node_count());
        it->second.insert(v);
      }
      for (const auto& [n, annulus] : annuli) {
        for (PointSet& comp : induced_components(mg, annulus)) {
          std::size_t next = kNoAnchor;
          for (std::size_t v : comp.members()) {
            bool is_far = true;
            for (std::size_t j = 0; j < i && is_far; ++j) is_far = !leq(mg(v, c.anchors[j]), far);
            if (is_far) {
              next = v;
              break;
            }
          }
          out.active.push_back(child(c, std::move(comp), next));
        }
      }
      continue;
    }

    // Anchors exhausted: peel off the neighbourhood of s_(i-l).
    const std::size_t anchor = c.anchors[i - l - 1];
    PointSet b(mg.node_count());
    for (std::size_t v : c.set.members())
      if (leq(mg(anchor, v), far)) b.insert(v);
    if (b.empty()) {
      out.active.push_back(child(c, c.set, kNoAnchor));
      continue;
    }
    const auto db = cluster_distances(mg, c.set, b.members());
    bool within_3r = true;
    for (std::size_t v : c.set.members()) within_3r = within_3r && leq(db[v], 3.0 * r);
    if (within_3r) {
      out.inactive.push_back(c.set);
      continue;
    }
    PointSet near(mg.node_count());
    for (std::size_t v : c.set.members())
      if (leq(db[v], static_cast<double>(delta) * r)) near.insert(v);
    for (PointSet& comp : induced_components(mg, near)) out.inactive.push_back(std::move(comp));
    for (PointSet& comp : induced_components(mg, set_minus(c.set, near)))
      out.active.push_back(child(c, std::move(comp), kNoAnchor));
  }
  return out;
}

std::vector<std::size_t> delta_of(std::size_t index, std::size_t rounds) {
  std::vector<std::size_t> delta(rounds);
  for (std::size_t k = rounds; k-- > 0;) {
    delta[k] = index % 3;
    index /= 3;
  }
  return delta;
}

// Interiors C' = {x in C : rho(x, union of the other clusters) >= r}.
std::vector<PointSet> shrink(const DiscretizedMetricGraph& mg, const std::vector<PointSet>& partition, double r) {
  const std::size_t n = mg.node_count();
  std::vector<std::size_t> owner(n, partition.size());
  for (std::size_t c = 0; c < partition.size(); ++c)
    for (std::size_t x : partition[c].members()) owner[x] = c;
  std::vector<PointSet> out;
  out.reserve(partition.size());
  for (std::size_t c = 0; c < partition.size(); ++c) {
    PointSet interior(n);
    for (std::size_t x : partition[c].members()) {
      double gap = kInfinity;
      for (std::size_t y = 0; y < n; ++y)
        if (owner[y] != c) gap = std::min(gap, mg(x, y));
      if (gap >= r - kBoundTol) interior.insert(x);
    }
    out.push_back(std::move(interior));
  }
  return out;
}

bool within(const DiscretizedMetricGraph& mg, std::size_t x, const PointSet& c, double radius) {
  for (std::size_t y : c.members())
    if (mg(x, y) <= radius + kBoundTol) return true;
  return false;
}

std::string describe_chain(const std::vector<PointSet>& chain) {
  std::string s;
  for (const auto& c : chain) s += (s.empty() ? "" : " > ") + std::to_string(c.count());
  return s;
}

}  // namespace

KPRDecomposition kpr_decompose(const DiscretizedMetricGraph& mg, double r, std::size_t m) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::DomainError, "r must be positive");
  if (m < 3) throw Error(ErrorKind::DomainError, "m must be at least 3");
  const std::size_t n = mg.node_count();
  const std::size_t rounds = 2 * m - 2;

  KPRDecomposition dec;
  dec.r = r;
  dec.m = m;
  dec.s = r / 2.0;
  dec.d = pow3(rounds) - 1;

  const PointSet everything = PointSet::all(n);
  if (mg.diameter() <= 24.0 * static_cast<double>(m) * r) {
    dec.trivial = true;
    dec.deltas = {{}};
    dec.partitions = {{everything}};
    dec.shrunken = {{everything}};
  } else {
    std::vector<Branch> level(1);
    level[0].active.push_back({everything, {0}, {everything}});
    for (std::size_t i = 1; i <= rounds; ++i) {
      std::vector<Branch> next(level.size() * 3);
      parallel_for(next.size(), [&](std::size_t idx) {
        const Branch& parent = level[idx / 3];
        next[idx] = parent.active.empty() ? parent : refine(mg, parent, i, idx % 3, r, m);
      });
      level = std::move(next);
    }
    for (std::size_t idx = 0; idx < level.size(); ++idx) {
      if (level[idx].active.empty()) continue;
      const ActiveCluster& c = level[idx].active.front();
      std::vector<std::size_t> anchors;
      for (std::size_t a : c.anchors)
        if (a != kNoAnchor) anchors.push_back(a);
      throw ResidualActiveClusterError(delta_of(idx, rounds), c.chain, anchors,
                                       "active cluster left after " + std::to_string(rounds) +
                                           " rounds (chain sizes " + describe_chain(c.chain) +
                                           "); the graph has a K_" + std::to_string(m) + " minor");
    }
    dec.deltas.resize(level.size());
    dec.partitions.resize(level.size());
    dec.shrunken.resize(level.size());
    for (std::size_t idx = 0; idx < level.size(); ++idx) {
      dec.deltas[idx] = delta_of(idx, rounds);
      dec.partitions[idx] = std::move(level[idx].inactive);
    }
    parallel_for(level.size(), [&](std::size_t idx) { dec.shrunken[idx] = shrink(mg, dec.partitions[idx], r); });
  }

  std::map<std::vector<std::size_t>, std::size_t> seen;
  double max_diam = 0.0;
  for (std::size_t b = 0; b < dec.shrunken.size(); ++b) {
    for (const PointSet& c : dec.shrunken[b]) {
      if (c.empty()) continue;
      if (seen.emplace(c.members(), dec.clusters.size()).second) {
        dec.clusters.push_back(c);
        dec.classes.push_back(b);
        for (std::size_t x : c.members())
          for (std::size_t y : c.members()) max_diam = std::max(max_diam, mg(x, y));
      }
    }
  }
  dec.gamma = std::max(1.0, max_diam / dec.s);
  return dec;
}

GraphNagataReport verify_graph_nagata(const DiscretizedMetricGraph& mg, const KPRDecomposition& dec) {
  const std::size_t n = mg.node_count();
  const double r = dec.r;
  GraphNagataReport rep;
  rep.diameter_bound = (48.0 * static_cast<double>(dec.m) + 6.0) * r;
  rep.multiplicity_bound = pow3(2 * dec.m - 2);

  std::vector<char> covered(n, 0);
  for (const auto& family : dec.shrunken)
    for (const auto& c : family)
      for (std::size_t x : c.members()) covered[x] = 1;
  for (std::size_t x = 0; x < n; ++x)
    if (!covered[x]) rep.uncovered.push_back(x);

  std::map<std::vector<std::size_t>, std::size_t> distinct;
  for (const auto& family : dec.partitions)
    for (const auto& c : family) distinct.emplace(c.members(), distinct.size());
  std::vector<std::pair<std::size_t, double>> diam(distinct.size());
  for (const auto& [members, id] : distinct) {
    double d = 0.0;
    for (std::size_t x : members)
      for (std::size_t y : members) d = std::max(d, mg(x, y));
    diam[id] = {id, d};
  }
  for (const auto& [id, d] : diam) {
    rep.max_diameter = std::max(rep.max_diameter, d);
    if (d > rep.diameter_bound + kBoundTol) rep.oversized.emplace_back(id, d);
  }

  std::vector<std::size_t> overlaps(dec.shrunken.size(), 0), separations(dec.shrunken.size(), 0);
  std::vector<double> gaps(dec.shrunken.size(), kInfinity);
  parallel_for(dec.shrunken.size(), [&](std::size_t b) {
    const auto& family = dec.shrunken[b];
    std::vector<std::size_t> owner(n, family.size());
    for (std::size_t c = 0; c < family.size(); ++c) {
      for (std::size_t x : family[c].members()) {
        if (owner[x] != family.size()) ++overlaps[b];
        owner[x] = c;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (owner[x] == family.size()) continue;
      for (std::size_t y = x + 1; y < n; ++y) {
        if (owner[y] == family.size() || owner[y] == owner[x]) continue;
        gaps[b] = std::min(gaps[b], mg(x, y));
        if (mg(x, y) < r - kBoundTol) ++separations[b];
      }
    }
  });
  for (std::size_t b = 0; b < dec.shrunken.size(); ++b) {
    rep.delta_overlaps += overlaps[b];
    rep.separation_violations += separations[b];
    rep.min_separation = std::min(rep.min_separation, gaps[b]);
  }

  std::vector<std::size_t> mult(n, 0);
  parallel_for(n, [&](std::size_t x) {
    for (const PointSet& c : dec.clusters)
      if (within(mg, x, c, r / 2.0)) ++mult[x];
  });
  for (std::size_t v : mult) rep.max_ball_multiplicity = std::max(rep.max_ball_multiplicity, v);
  return rep;
}

NagataCover to_nagata_cover(const DiscretizedMetricGraph& mg, const KPRDecomposition& dec) {
  (void)mg;
  NagataCover cover;
  cover.scale = dec.s;
  cover.gamma = dec.gamma;
  cover.d = dec.d;
  cover.clusters = dec.clusters;
  cover.classes = dec.classes;
  return cover;
}

NagataBuilder kpr_nagata_builder(const DiscretizedMetricGraph& mg, std::size_t m) {
  return [&mg, m](const FiniteMetricSpace& space, const PointSet& subspace, double scale) {
    if (space.size() != mg.node_count()) throw Error(ErrorKind::DomainMismatch, "space is not the graph's node set");
    if (subspace.empty()) throw Error(ErrorKind::EmptySubspace, "N is empty");
    const KPRDecomposition dec = kpr_decompose(mg, 2.0 * scale, m);
    NagataCover cover;
    cover.scale = scale;
    cover.d = dec.d;
    double max_diam = 0.0;
    for (std::size_t c = 0; c < dec.clusters.size(); ++c) {
      PointSet part(space.size());
      for (std::size_t x : dec.clusters[c].members())
        if (subspace.contains(x)) part.insert(x);
      if (part.empty()) continue;
      max_diam = std::max(max_diam, set_diameter(space, part));
      cover.clusters.push_back(std::move(part));
      cover.classes.push_back(dec.classes[c]);
    }
    cover.gamma = std::max(1.0, max_diam / scale);
    return cover;
  };
}

}  // namespace lipext
