#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lipext/covers.hpp"
#include "lipext/graph.hpp"

namespace lipext {

/// Iterated annulus/component decomposition of a metric graph. For every
/// branch delta in {0,1,2}^(2m-2) (lexicographic order) `partitions` holds the
/// final partition I_delta and `shrunken` its interiors
/// C' = {x in C : rho(x, other clusters of I_delta) >= r}. `clusters` is the
/// de-duplicated union of all non-empty interiors with `classes` naming the
/// first branch that produced each one.
struct KPRDecomposition {
  double r = 0.0;
  std::size_t m = 3;
  bool trivial = false;  // diam <= 24 m r: the whole graph is one cluster
  std::vector<std::vector<std::size_t>> deltas;
  std::vector<std::vector<PointSet>> partitions;
  std::vector<std::vector<PointSet>> shrunken;
  std::vector<PointSet> clusters;
  std::vector<std::size_t> classes;
  double s = 0.0;             // r / 2
  std::size_t d = 0;          // 3^(2m-2) - 1
  double gamma = 1.0;         // measured: max cluster diameter / s
};

/// Raised when an active cluster survives all 2m-2 rounds, which certifies a
/// K_m minor in the graph. Carries the branch and the nested cluster chain
/// from the whole node set down to the survivor, with the anchors used.
class ResidualActiveClusterError : public Error {
 public:
  ResidualActiveClusterError(std::vector<std::size_t> delta, std::vector<PointSet> chain,
                             std::vector<std::size_t> anchors, const std::string& what)
      : Error(ErrorKind::ResidualActiveCluster, what),
        delta_(std::move(delta)),
        chain_(std::move(chain)),
        anchors_(std::move(anchors)) {}

  const std::vector<std::size_t>& delta() const noexcept { return delta_; }
  const std::vector<PointSet>& chain() const noexcept { return chain_; }
  const std::vector<std::size_t>& anchors() const noexcept { return anchors_; }

 private:
  std::vector<std::size_t> delta_;
  std::vector<PointSet> chain_;
  std::vector<std::size_t> anchors_;
};

/// Throws Error(DomainError) for r <= 0 or m < 3 and
/// ResidualActiveClusterError when some branch keeps an active cluster.
KPRDecomposition kpr_decompose(const DiscretizedMetricGraph& mg, double r, std::size_t m);

struct GraphNagataReport {
  std::vector<std::size_t> uncovered;
  std::vector<std::pair<std::size_t, double>> oversized;  // distinct partition cluster, diameter
  std::size_t delta_overlaps = 0;       // node in two interiors of one branch
  std::size_t separation_violations = 0;  // interiors of one branch closer than r
  double min_separation = kInfinity;
  double max_diameter = 0.0;
  double diameter_bound = 0.0;          // (48m + 6) r
  std::size_t max_ball_multiplicity = 0;  // clusters within r/2 of a node
  std::size_t multiplicity_bound = 0;     // 3^(2m-2)

  bool passed() const {
    return uncovered.empty() && oversized.empty() && delta_overlaps == 0 && separation_violations == 0 &&
           max_ball_multiplicity <= multiplicity_bound;
  }
};

GraphNagataReport verify_graph_nagata(const DiscretizedMetricGraph& mg, const KPRDecomposition& dec);

/// The decomposition as a Nagata cover of the node space at scale s = r/2.
NagataCover to_nagata_cover(const DiscretizedMetricGraph& mg, const KPRDecomposition& dec);

/// Nagata builder over mg.as_space(): at scale s it decomposes with r = 2s
/// and restricts the interiors to the subspace. Same-branch interiors are
/// r > s apart, so branches serve as separated classes.
NagataBuilder kpr_nagata_builder(const DiscretizedMetricGraph& mg, std::size_t m);

}  // namespace lipext
