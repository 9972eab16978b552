#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lipext/metric.hpp"

namespace lipext {

/// Cluster family over a subspace N at scale s, with declared constants
/// (d, gamma). `classes` optionally groups clusters into families whose
/// distinct members lie more than s apart; any set of diameter <= s then
/// meets at most one cluster per class.
struct NagataCover {
  double scale = 0.0;
  double gamma = 1.0;
  std::size_t d = 0;
  std::vector<PointSet> clusters;
  std::vector<std::size_t> classes;  // empty or one entry per cluster
};

enum class MultiplicityCertificate {
  None,
  SeparatedClasses,   // per-class separation > s and #classes <= d + 1
  BallCriterion,      // |{C : rho(x, C) <= s}| <= d + 1 for every x
  ExactEnumeration,   // every A with diam A <= s checked (|N| <= 16)
};

const char* to_string(MultiplicityCertificate c) noexcept;

struct NagataReport {
  std::vector<std::size_t> uncovered;                 // (a)
  std::vector<std::size_t> foreign_clusters;          // clusters that leave N or are empty
  std::vector<std::pair<std::size_t, double>> oversized;  // (b): cluster, diameter
  double max_diameter = 0.0;
  std::size_t max_ball_multiplicity = 0;
  MultiplicityCertificate certificate = MultiplicityCertificate::None;
  std::optional<std::vector<std::size_t>> witness;    // (c): A meeting > d + 1 clusters
  bool exact_checked = false;

  bool passed() const {
    return uncovered.empty() && foreign_clusters.empty() && oversized.empty() && certificate != MultiplicityCertificate::None &&
           !witness.has_value();
  }
};

using NagataBuilder = std::function<NagataCover(const FiniteMetricSpace&, const PointSet&, double)>;

/// Closed s-balls around a greedy maximal s-separated net of N, colored
/// greedily so that net points within 3s get distinct colors. gamma = 2 and
/// d + 1 is the number of colors used.
NagataCover build_nagata_from_doubling(const FiniteMetricSpace& space, const PointSet& subspace, double scale);

/// Checks (a) and (b) exactly and certifies (c). With `exact` and |N| <= 16
/// every subset of diameter <= s is also enumerated.
NagataReport verify_nagata(const FiniteMetricSpace& space, const PointSet& subspace, const NagataCover& cover,
                           bool exact = false);

struct WhitneyParams {
  std::size_t o = 1;
  double s = 0.0;
  double d = 0.0;
  double a = 0.0;
};

struct WhitneyCover {
  std::vector<PointSet> sets;
  std::vector<std::size_t> anchors;
  std::vector<int> annulus;
  WhitneyParams params;
  double epsilon = 0.25;
  std::size_t nagata_d = 0;
  double nagata_gamma = 1.0;
};

inline constexpr double kDefaultEpsilon = 0.25;

/// Annulus index j with 2^j <= t < 2^(j+1), computed exactly for t > 0.
int annulus_index(double t);

/// Whitney cover of M \ N with parameters (3(d+1), eps/2, 4(1+gamma)(eps+2), 5),
/// built annulus by annulus from Nagata covers of N at s_j = 2^(j+1)(eps+2).
/// Throws Error(EmptyComplement | EmptySubspace | DomainError).
WhitneyCover build_whitney_from_nagata(const FiniteMetricSpace& space, const PointSet& subspace, double epsilon,
                                       const NagataBuilder& builder = build_nagata_from_doubling);

/// Whitney parameters implied by Nagata constants (d, gamma) and epsilon.
WhitneyParams whitney_params(std::size_t nagata_d, double nagata_gamma, double epsilon);

struct WhitneyItemReport {
  std::size_t violations = 0;
  double worst_slack = 0.0;  // min over checks of (allowed - observed); negative means violated
};

struct WhitneyReport {
  WhitneyItemReport overlap;       // (i)
  WhitneyItemReport depth;         // (ii)
  WhitneyItemReport eccentricity;  // (iii)
  WhitneyItemReport ratio;         // (iv)
  WhitneyItemReport anchor;
  std::size_t empty_sets = 0;
  std::size_t sets_touching_n = 0;
  std::vector<std::string> messages;

  bool passed() const {
    return overlap.violations == 0 && depth.violations == 0 && eccentricity.violations == 0 &&
           ratio.violations == 0 && anchor.violations == 0 && empty_sets == 0 && sets_touching_n == 0;
  }
};

/// Exhaustive check of (i)-(iv) and the anchor condition against the
/// cover's declared parameters. The ratio bound (iv) is inclusive within
/// kBoundTol.
WhitneyReport verify_whitney(const FiniteMetricSpace& space, const PointSet& subspace, const WhitneyCover& cover);

}  // namespace lipext
