#include "lipext/covers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace lipext {

const char* to_string(MultiplicityCertificate c) noexcept {
  switch (c) {
    case MultiplicityCertificate::None: return "none";
    case MultiplicityCertificate::SeparatedClasses: return "separated-classes";
    case MultiplicityCertificate::BallCriterion: return "ball-criterion";
    case MultiplicityCertificate::ExactEnumeration: return "exact-enumeration";
  }
  return "none";
}

NagataCover build_nagata_from_doubling(const FiniteMetricSpace& space, const PointSet& subspace, double scale) {
  if (subspace.universe() != space.size()) throw Error(ErrorKind::DomainMismatch, "subspace mask size");
  if (subspace.empty()) throw Error(ErrorKind::EmptySubspace, "Nagata cover of an empty subspace");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorKind::DomainError, "scale must be positive");

  const auto net = maximal_separated_net(space, subspace, scale).members();

  // Greedy coloring in ascending index: net points within 3s differ.
  std::vector<std::size_t> color(net.size(), 0);
  std::size_t colors = 0;
  for (std::size_t a = 0; a < net.size(); ++a) {
    std::vector<char> used(colors + 1, 0);
    for (std::size_t b = 0; b < a; ++b)
      if (space(net[a], net[b]) <= 3.0 * scale) used[color[b]] = 1;
    std::size_t c = 0;
    while (used[c]) ++c;
    color[a] = c;
    colors = std::max(colors, c + 1);
  }

  NagataCover cover;
  cover.scale = scale;
  cover.gamma = 2.0;
  cover.d = colors - 1;
  for (std::size_t a = 0; a < net.size(); ++a) {
    PointSet ball(space.size());
    for (std::size_t x : subspace.members())
      if (space(net[a], x) <= scale) ball.insert(x);
    cover.clusters.push_back(std::move(ball));
    cover.classes.push_back(color[a]);
  }
  return cover;
}

namespace {

std::vector<std::size_t> clusters_met(const std::vector<std::vector<char>>& membership,
                                      const std::vector<std::size_t>& points) {
  std::vector<std::size_t> met;
  for (std::size_t c = 0; c < membership.size(); ++c)
    for (std::size_t x : points)
      if (membership[c][x]) {
        met.push_back(c);
        break;
      }
  return met;
}

// Enumerates all non-empty A subset of `pts` with diam A <= s by clique
// extension in ascending order; stops at the first A meeting > limit clusters.
bool enumerate_small_sets(const FiniteMetricSpace& space, const std::vector<std::size_t>& pts, double s,
                          const std::vector<std::vector<char>>& membership, std::size_t limit,
                          std::vector<std::size_t>& current, std::size_t start,
                          std::optional<std::vector<std::size_t>>& witness) {
  for (std::size_t k = start; k < pts.size(); ++k) {
    const std::size_t x = pts[k];
    const bool fits = std::all_of(current.begin(), current.end(),
                                  [&](std::size_t y) { return space(x, y) <= s + kMetricTol; });
    if (!fits) continue;
    current.push_back(x);
    if (clusters_met(membership, current).size() > limit) {
      witness = current;
      return false;
    }
    if (!enumerate_small_sets(space, pts, s, membership, limit, current, k + 1, witness)) return false;
    current.pop_back();
  }
  return true;
}

}  // namespace

NagataReport verify_nagata(const FiniteMetricSpace& space, const PointSet& subspace, const NagataCover& cover,
                           bool exact) {
  NagataReport report;
  const std::size_t n = space.size();
  const double s = cover.scale;
  const std::size_t limit = cover.d + 1;
  const auto pts = subspace.members();

  std::vector<std::vector<char>> membership(cover.clusters.size(), std::vector<char>(n, 0));
  for (std::size_t c = 0; c < cover.clusters.size(); ++c) {
    const auto& cl = cover.clusters[c];
    bool foreign = cl.universe() != n || cl.empty();
    for (std::size_t x = 0; x < cl.universe() && !foreign; ++x) {
      if (!cl.contains(x)) continue;
      if (!subspace.contains(x)) foreign = true;
      membership[c][x] = 1;
    }
    if (foreign) report.foreign_clusters.push_back(c);
  }

  // (a)
  for (std::size_t x : pts) {
    const bool covered = std::any_of(membership.begin(), membership.end(), [&](const auto& m) { return m[x]; });
    if (!covered) report.uncovered.push_back(x);
  }
  // (b)
  for (std::size_t c = 0; c < cover.clusters.size(); ++c) {
    if (cover.clusters[c].universe() != n) continue;
    const double diam = set_diameter(space, cover.clusters[c]);
    report.max_diameter = std::max(report.max_diameter, diam);
    if (diam > cover.gamma * s + kBoundTol) report.oversized.emplace_back(c, diam);
  }

  // (c): cheap witnesses first (singletons and pairs).
  for (std::size_t a = 0; a < pts.size() && !report.witness; ++a)
    if (clusters_met(membership, {pts[a]}).size() > limit) report.witness = std::vector<std::size_t>{pts[a]};
  for (std::size_t a = 0; a < pts.size() && !report.witness; ++a) {
    for (std::size_t b = a + 1; b < pts.size() && !report.witness; ++b)
      if (space(pts[a], pts[b]) <= s && clusters_met(membership, {pts[a], pts[b]}).size() > limit)
        report.witness = std::vector<std::size_t>{pts[a], pts[b]};
  }

  // Ball criterion statistic, reported regardless of which certificate wins.
  for (std::size_t x : pts) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < cover.clusters.size(); ++c) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t y : pts)
        if (membership[c][y]) best = std::min(best, space(x, y));
      if (best <= s + kBoundTol) ++count;
    }
    report.max_ball_multiplicity = std::max(report.max_ball_multiplicity, count);
  }

  if (!report.witness) {
    if (!cover.classes.empty() && cover.classes.size() == cover.clusters.size()) {
      const std::set<std::size_t> distinct(cover.classes.begin(), cover.classes.end());
      bool separated = distinct.size() <= limit;
      for (std::size_t c1 = 0; c1 < cover.clusters.size() && separated; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < cover.clusters.size() && separated; ++c2)
          if (cover.classes[c1] == cover.classes[c2] &&
              set_to_set_distance(space, cover.clusters[c1], cover.clusters[c2]) <= s)
            separated = false;
      if (separated) report.certificate = MultiplicityCertificate::SeparatedClasses;
    }
    if (report.certificate == MultiplicityCertificate::None && report.max_ball_multiplicity <= limit)
      report.certificate = MultiplicityCertificate::BallCriterion;
  }

  if (exact && pts.size() <= 16 && !report.witness) {
    std::vector<std::size_t> current;
    std::optional<std::vector<std::size_t>> witness;
    enumerate_small_sets(space, pts, s, membership, limit, current, 0, witness);
    report.exact_checked = true;
    if (witness) {
      report.witness = witness;
      report.certificate = MultiplicityCertificate::None;
    } else if (report.certificate == MultiplicityCertificate::None) {
      report.certificate = MultiplicityCertificate::ExactEnumeration;
    }
  }
  return report;
}

int annulus_index(double t) {
  int e = 0;
  std::frexp(t, &e);  // t = m * 2^e with m in [1/2, 1)
  return e - 1;
}

WhitneyParams whitney_params(std::size_t nagata_d, double nagata_gamma, double epsilon) {
  WhitneyParams p;
  p.o = 3 * (nagata_d + 1);
  p.s = epsilon / 2.0;
  p.d = 4.0 * (1.0 + nagata_gamma) * (epsilon + 2.0);
  p.a = 5.0;
  return p;
}

WhitneyCover build_whitney_from_nagata(const FiniteMetricSpace& space, const PointSet& subspace, double epsilon,
                                       const NagataBuilder& builder) {
  if (subspace.universe() != space.size()) throw Error(ErrorKind::DomainMismatch, "subspace mask size");
  if (subspace.empty()) throw Error(ErrorKind::EmptySubspace, "subspace N is empty");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw Error(ErrorKind::DomainError, "epsilon must lie in (0, 1/2)");
  const PointSet outside = subspace.complement();
  if (outside.empty()) throw Error(ErrorKind::EmptyComplement, "M \\ N is empty");

  const std::size_t n = space.size();
  const auto out_pts = outside.members();
  const auto in_pts = subspace.members();
  std::vector<double> dist_n(n, 0.0);
  std::map<int, std::vector<std::size_t>> annuli;
  for (std::size_t x : out_pts) {
    dist_n[x] = set_distance(space, x, subspace);
    annuli[annulus_index(dist_n[x])].push_back(x);
  }

  WhitneyCover cover;
  cover.epsilon = epsilon;
  bool first = true;
  for (const auto& [j, members] : annuli) {
    const double s_j = std::ldexp(epsilon + 2.0, j + 1);
    const double radius = std::ldexp(epsilon, j);
    const NagataCover nagata = builder(space, subspace, s_j);
    if (first || nagata.d > cover.nagata_d) cover.nagata_d = nagata.d;
    if (first || nagata.gamma > cover.nagata_gamma) cover.nagata_gamma = nagata.gamma;
    first = false;

    for (const PointSet& cluster : nagata.clusters) {
      PointSet k(n);
      for (std::size_t x : members) {
        if (std::abs(dist_n[x] - set_distance(space, x, cluster)) > kBoundTol) continue;
        for (std::size_t y : out_pts)
          if (space(x, y) < radius) k.insert(y);
      }
      if (k.empty()) continue;

      std::size_t anchor = in_pts.front();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t z : in_pts) {
        const double dz = set_distance(space, z, k);
        if (dz < best) {
          best = dz;
          anchor = z;
        }
      }
      cover.sets.push_back(std::move(k));
      cover.anchors.push_back(anchor);
      cover.annulus.push_back(j);
    }
  }
  cover.params = whitney_params(cover.nagata_d, cover.nagata_gamma, epsilon);
  return cover;
}

namespace {

void record(WhitneyItemReport& item, double allowed, double observed, bool& first) {
  const double slack = allowed - observed;
  if (first || slack < item.worst_slack) item.worst_slack = slack;
  first = false;
  if (slack < -kBoundTol) ++item.violations;
}

}  // namespace

WhitneyReport verify_whitney(const FiniteMetricSpace& space, const PointSet& subspace, const WhitneyCover& cover) {
  WhitneyReport report;
  const std::size_t n = space.size();
  const auto& prm = cover.params;
  const auto out_pts = subspace.complement().members();
  std::vector<double> dist_n(n, 0.0);
  for (std::size_t x : out_pts) dist_n[x] = set_distance(space, x, subspace);

  bool f_overlap = true, f_depth = true, f_ecc = true, f_ratio = true, f_anchor = true;

  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    const PointSet& k = cover.sets[i];
    if (k.empty()) {
      ++report.empty_sets;
      report.messages.push_back("set " + std::to_string(i) + " is empty");
      continue;
    }
    const auto pts = k.members();
    if (std::any_of(pts.begin(), pts.end(), [&](std::size_t x) { return subspace.contains(x); })) {
      ++report.sets_touching_n;
      report.messages.push_back("set " + std::to_string(i) + " meets N");
      continue;
    }
    const double gap = set_to_set_distance(space, k, subspace);
    // (iii)
    record(report.eccentricity, prm.d * gap, set_diameter(space, k), f_ecc);
    // (iv)
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t x : pts) {
      lo = std::min(lo, dist_n[x]);
      hi = std::max(hi, dist_n[x]);
    }
    record(report.ratio, prm.a, hi / lo, f_ratio);
    // anchor
    if (i < cover.anchors.size() && subspace.contains(cover.anchors[i])) {
      record(report.anchor, 2.0 * gap, set_distance(space, cover.anchors[i], k), f_anchor);
    } else {
      ++report.anchor.violations;
      report.messages.push_back("set " + std::to_string(i) + " has no anchor in N");
    }
  }

  for (std::size_t x : out_pts) {
    std::size_t count = 0;
    double depth = 0.0;
    for (const PointSet& k : cover.sets) {
      if (!k.contains(x)) continue;
      ++count;
      const PointSet rest = k.complement();
      depth = std::max(depth, set_distance(space, x, rest));
    }
    // (i)
    record(report.overlap, static_cast<double>(prm.o), static_cast<double>(count), f_overlap);
    // (ii)
    record(report.depth, depth, prm.s * dist_n[x], f_depth);
  }
  return report;
}

}  // namespace lipext
